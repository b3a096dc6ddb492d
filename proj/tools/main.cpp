// pform: verification sweeps over F_p, p-adic solvers, and exact bound
// chains for quartic forms over Q_p.
//
// Progress goes to stderr; stdout carries parseable results only.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pform/bounds.hpp"
#include "pform/diagonal.hpp"
#include "pform/report.hpp"
#include "pform/verify.hpp"

namespace {

using namespace pform;

std::vector<std::int64_t> parse_coeff_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  if (out.empty()) throw CLI::ValidationError("--coeffs", "empty coefficient list");
  return out;
}

int exit_code_for(Verdict v) {
  return (v == Verdict::confirmed || v == Verdict::exceptions_as_expected) ? 0 : 2;
}

void print_progress(const std::string& label, std::uint64_t done,
                    std::uint64_t total) {
  if (total == 0) return;
  std::fprintf(stderr, "\r%s: %5.1f%% (%llu/%llu)", label.c_str(),
               100.0 * double(done) / double(total),
               static_cast<unsigned long long>(done),
               static_cast<unsigned long long>(total));
  if (done == total) std::fprintf(stderr, "\n");
  std::fflush(stderr);
}

int run_verify_task(const std::string& task, std::uint32_t prime_value,
                    std::size_t n, std::uint32_t r, std::uint64_t budget,
                    const TaskOptions& options, const std::string& out_dir,
                    bool resume) {
  auto run_one = [&](std::uint32_t pv) -> int {
    using Params = std::vector<std::pair<std::string, std::string>>;
    Params params;
    if (task == "mykey51" || task == "mykey52") {
      params = {{"p", "5"}};
    } else if (task == "identities") {
      params = {};
    } else if (task == "bad-family") {
      params = {{"p", std::to_string(pv)}, {"n", std::to_string(n)}};
    } else if (task == "beta-search") {
      params = {{"r", std::to_string(r)},
                {"p", std::to_string(pv)},
                {"n", std::to_string(n)},
                {"budget", std::to_string(budget)}};
    } else {
      params = {{"p", std::to_string(pv)}};
    }
    if (resume) {
      if (auto existing = find_existing_report(task, params, out_dir)) {
        std::cout << "resume: report exists, skipping (" << *existing << ")\n";
        return 0;
      }
    }

    TaskReport report;
    if (task == "cl") {
      report = task_cl(Prime(pv), options);
    } else if (task == "mykey-case1") {
      report = task_mykey_case1(Prime(pv), options).report;
    } else if (task == "mykey51") {
      report = task_mykey51(options);
    } else if (task == "mykey52") {
      report = task_mykey52(options);
    } else if (task == "quintic") {
      report = task_quintic(Prime(pv), options);
    } else if (task == "identities") {
      report = task_identities();
    } else if (task == "badform") {
      report = task_badform_exceptions(Prime(pv), options);
    } else if (task == "bad-family") {
      report = task_bad_family(Prime(pv), n);
    } else if (task == "beta-search") {
      report = task_beta_counterexample_search(r, Prime(pv), n, budget);
    } else {
      std::cerr << "unknown task: " << task << "\n"
                << "tasks: cl mykey-case1 mykey51 mykey52 quintic identities "
                   "badform bad-family beta-search\n";
      return 1;
    }
    std::string path = write_report(report, out_dir);
    std::cout << report.task;
    for (const auto& [k, v] : report.params) std::cout << " " << k << "=" << v;
    std::cout << " verdict=" << verdict_name(report.verdict)
              << " forms=" << report.forms_examined
              << " exceptions=" << report.exceptions.size()
              << " wall_ms=" << report.wall_ms
              << " checksum=" << report_checksum(report) << "\n"
              << "report: " << path << "\n";
    return exit_code_for(report.verdict);
  };
  return run_one(prime_value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification sweeps, p-adic solvers and bound chains for quartic forms"};
  app.require_subcommand(1);

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run a named verification task");
  std::string task_id;
  std::uint32_t prime_value = 0;
  std::string range_text;
  std::size_t var_count = 3;
  std::uint32_t quad_count = 1;
  std::uint64_t budget = 10000;
  unsigned workers = default_worker_count();
  std::string out_dir = "reports";
  bool resume = false;
  bool quiet = false;
  verify->add_option("task", task_id, "task id")->required();
  verify->add_option("--prime", prime_value, "prime parameter");
  verify->add_option("--range", range_text, "primes A..B (runs each prime in range)");
  verify->add_option("--n", var_count, "variable count (bad-family, beta-search)");
  verify->add_option("--r", quad_count, "number of quadratics (beta-search)");
  verify->add_option("--budget", budget, "random systems to sample (beta-search)");
  verify->add_option("--workers", workers, "worker threads");
  verify->add_option("--out", out_dir, "report output directory");
  verify->add_flag("--resume", resume, "skip tasks with an existing valid report");
  verify->add_flag("--quiet", quiet, "suppress progress output");

  // bounds ------------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand("bounds", "exact bound computations");
  bounds_cmd->require_subcommand(1);
  auto* bounds_v4 = bounds_cmd->add_subcommand("v4", "quartic bound for one prime");
  std::uint32_t bounds_prime = 0;
  std::string method = "med1";
  bounds_v4->add_option("--prime", bounds_prime, "prime")->required();
  bounds_v4->add_option("--method", method, "med1 | improved | hybrid")
      ->check(CLI::IsMember({"med1", "improved", "hybrid"}));
  auto* bounds_table_cmd =
      bounds_cmd->add_subcommand("table", "print every certified number");

  // solve -------------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "constructive diagonal solvers");
  solve->require_subcommand(1);
  auto* diag2 = solve->add_subcommand("diag2", "2-adic diagonal quartic");
  std::string coeff_text;
  diag2->add_option("--coeffs", coeff_text, "integer coefficients, comma separated")
      ->required();

  // oracle ------------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "diagonal solvability oracle");
  std::uint32_t oracle_degree = 4;
  std::uint32_t oracle_prime = 2;
  std::string oracle_coeffs;
  oracle->add_option("--degree", oracle_degree, "form degree (2, 3 or 4)")->required();
  oracle->add_option("--prime", oracle_prime, "prime")->required();
  oracle->add_option("--coeffs", oracle_coeffs, "integer coefficients")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*verify) {
      TaskOptions options;
      options.workers = workers;
      if (!quiet) {
        std::string label = task_id;
        options.progress = [label](std::uint64_t done, std::uint64_t total) {
          print_progress(label, done, total);
        };
      }
      std::vector<std::uint32_t> primes;
      if (!range_text.empty()) {
        auto sep = range_text.find("..");
        if (sep == std::string::npos) {
          std::cerr << "--range expects A..B\n";
          return 1;
        }
        std::uint32_t lo = std::stoul(range_text.substr(0, sep));
        std::uint32_t hi = std::stoul(range_text.substr(sep + 2));
        for (std::uint32_t q = lo; q <= hi; ++q) {
          if (is_prime_u32(q)) primes.push_back(q);
        }
      } else {
        primes.push_back(prime_value);
      }
      int worst = 0;
      for (std::uint32_t pv : primes) {
        int code = run_verify_task(task_id, pv, var_count, quad_count, budget,
                                   options, out_dir, resume);
        worst = std::max(worst, code);
      }
      return worst;
    }

    if (*bounds_v4) {
      Prime p(bounds_prime);
      V4Method m = method == "med1" ? V4Method::full_chain
                   : method == "improved" ? V4Method::improved_chain
                                          : V4Method::hybrid;
      BoundResult res = v4_bound(p, m);
      std::cout << "v4(" << bounds_prime << ") <= " << res.value << "\n"
                << res.trace.to_string();
      return 0;
    }
    if (*bounds_table_cmd) {
      std::cout << bounds_table();
      return 0;
    }

    if (*diag2) {
      DiagonalForm f = DiagonalForm::from_integers(Prime(2), 4,
                                                   parse_coeff_list(coeff_text));
      SolveOutcome outcome = solve_2adic_diagonal_quartic(f);
      if (outcome.status == SolveStatus::solved) {
        std::cout << "solved: ";
        for (std::size_t i = 0; i < outcome.solution.size(); ++i) {
          if (i) std::cout << ",";
          std::cout << outcome.solution[i].residue();
        }
        std::cout << " (residues mod 2^" << outcome.solution[0].precision()
                  << ", normalized form " << f.to_string() << ")\n";
        return 0;
      }
      std::cout << "not decided by the level algorithm; oracle says: ";
      OracleResult oracle_res = is_solvable_oracle(f);
      std::cout << (oracle_res.solvable ? "solvable" : "no nontrivial zero") << "\n";
      return oracle_res.solvable ? 0 : 2;
    }

    if (*oracle) {
      DiagonalForm f = DiagonalForm::from_integers(
          Prime(oracle_prime), oracle_degree, parse_coeff_list(oracle_coeffs));
      OracleResult res = is_solvable_oracle(f);
      if (res.solvable) {
        std::cout << "solvable; witness ";
        for (std::size_t i = 0; i < res.witness.size(); ++i) {
          if (i) std::cout << ",";
          std::cout << res.witness[i].residue();
        }
        std::cout << " (mod " << oracle_prime << "^"
                  << res.witness[0].precision() << ")\n";
      } else {
        std::cout << "no nontrivial zero\n";
      }
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
