#include <doctest.h>

#include <random>
#include <set>

#include "pform/verify.hpp"

using namespace pform;

TEST_CASE("task_cl small primes") {
  SUBCASE("p = 2") {
    auto r = task_cl(Prime(2));
    CHECK(r.verdict == Verdict::confirmed);
    CHECK(r.forms_examined == 8);
  }
  SUBCASE("p = 5") {
    auto r = task_cl(Prime(5));
    CHECK(r.verdict == Verdict::confirmed);
    CHECK(r.forms_examined == 8000);
  }
  SUBCASE("p = 3 rejected") {
    CHECK_THROWS_AS(task_cl(Prime(3)), std::invalid_argument);
  }
}

TEST_CASE("fast evaluation paths agree with the generic Form path") {
  // 10^4 random instances across the table-driven families.
  std::mt19937_64 rng(99);
  SUBCASE("cubic family") {
    for (std::uint32_t pv : {5u, 7u, 13u}) {
      Prime p(pv);
      std::uint64_t size = cl_family_size(p);
      for (int trial = 0; trial < 1200; ++trial) {
        std::uint64_t idx = rng() % size;
        CHECK(cl_passes_fast(p, idx) ==
              has_nonsingular_zero(cl_form_at(p, idx)));
      }
    }
  }
  SUBCASE("quintic family") {
    for (std::uint32_t pv : {13u, 17u}) {
      Prime p(pv);
      std::uint64_t size = quintic_family_size(p);
      for (int trial = 0; trial < 1600; ++trial) {
        std::uint64_t idx = rng() % size;
        CHECK(quintic_passes_fast(p, idx) == quintic_passes_generic(p, idx));
      }
    }
  }
  SUBCASE("quartic families") {
    for (int trial = 0; trial < 1600; ++trial) {
      std::uint64_t i51 = rng() % 8000;
      CHECK(mykey51_passes_fast(i51) ==
            has_nonsingular_zero(mykey51_form_at(i51)));
      std::uint64_t i52 = rng() % 62500;
      CHECK(mykey52_passes_fast(i52) ==
            has_nonsingular_zero(mykey52_form_at(i52)));
    }
  }
}

TEST_CASE("task_identities") {
  auto r = task_identities();
  CHECK(r.verdict == Verdict::confirmed);
  CHECK(r.forms_examined == 4);
}

TEST_CASE("task_bad_family") {
  CHECK(task_bad_family(Prime(3), 3).verdict == Verdict::confirmed);
  CHECK(task_bad_family(Prime(7), 4).verdict == Verdict::confirmed);
  CHECK(task_bad_family(Prime(5), 2).verdict == Verdict::confirmed);
}

TEST_CASE("task_badform_exceptions") {
  auto r13 = task_badform_exceptions(Prime(13));
  CHECK(r13.verdict == Verdict::exceptions_as_expected);
  CHECK(r13.forms_examined == 12 * 12 * 12);
  CHECK(!r13.exceptions.empty());
  // x^4 + y^4 + 3z^4 must not be exceptional: it has a non-singular zero.
  for (const auto& e : r13.exceptions) {
    CHECK(e != parse_form("x^4 + y^4 + 3*z^4 mod 13").to_string());
  }
  // Closure under the family's symmetry group: permuting the variables of
  // any exception yields another exception.
  std::set<std::string> set13(r13.exceptions.begin(), r13.exceptions.end());
  for (const auto& e : r13.exceptions) {
    Form f = parse_form(e);
    CHECK(set13.count(f.permuted({1, 0, 2}).to_string()) == 1);
    CHECK(set13.count(f.permuted({2, 1, 0}).to_string()) == 1);
  }
}

TEST_CASE("task_mykey51 finds exactly the three families") {
  auto r = task_mykey51();
  CHECK(r.verdict == Verdict::exceptions_as_expected);
  CHECK(r.forms_examined == 8000);
  std::set<std::string> found(r.exceptions.begin(), r.exceptions.end());
  CHECK(found.count(parse_form("2*x^4 + y^4 + z^4 mod 5").to_string()) == 1);
  CHECK(found.count(parse_form("x^4 + y^4 + z^4 mod 5").to_string()) == 1);
  CHECK(found.count(parse_form("x^4 + y^4 + 2*x*z^3 + 3*z^4 mod 5").to_string()) == 1);
}

TEST_CASE("task_mykey52 confirms with the full cardinality") {
  auto r = task_mykey52();
  CHECK(r.verdict == Verdict::confirmed);
  CHECK(r.forms_examined == 62500);
  CHECK(r.exceptions.empty());
}

TEST_CASE("task_mykey_case1 at p = 3") {
  auto res = task_mykey_case1(Prime(3));
  CHECK(res.report.verdict == Verdict::confirmed);
  CHECK(res.report.forms_examined == 2 * 3 * 2);
  for (auto q : res.q_choice) CHECK(q != UINT32_MAX);
  // The recorded q is unchanged when recomputed with the generic
  // (non-table) evaluator.
  for (std::uint64_t idx = 0; idx < res.q_choice.size(); ++idx) {
    CHECK(mykey_case1_first_q_generic(Prime(3), idx) ==
          std::int64_t(res.q_choice[idx]));
  }
}

TEST_CASE("mykey-case1 q choices stable under the generic evaluator at p = 7") {
  auto res = task_mykey_case1(Prime(7));
  REQUIRE(res.report.verdict == Verdict::confirmed);
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 12; ++trial) {
    std::uint64_t idx = rng() % res.q_choice.size();
    CHECK(mykey_case1_first_q_generic(Prime(7), idx) ==
          std::int64_t(res.q_choice[idx]));
  }
}

TEST_CASE("quintic family determinism and cross-checks") {
  Prime p(13);
  std::uint64_t size = quintic_family_size(p);
  CHECK(size > 0);
  std::mt19937_64 rng(4);
  // Fast path vs generic evaluator on random indices.
  for (int trial = 0; trial < 60; ++trial) {
    std::uint64_t idx = rng() % size;
    Form f = quintic_form_at(p, idx);
    CHECK(quintic_passes_generic(p, idx) == has_nonsingular_zero(f));
  }
}

TEST_CASE("the published quintic exception really lacks non-singular zeros") {
  CHECK(!has_nonsingular_zero(quintic_known_exception_p13()));
}

TEST_CASE("beta counterexample search is deterministic and quiet") {
  auto a = task_beta_counterexample_search(1, Prime(3), 5, 50);
  auto b = task_beta_counterexample_search(1, Prime(3), 5, 50);
  CHECK(report_checksum(a) == report_checksum(b));
  CHECK(a.verdict == Verdict::confirmed);  // beta(1) = 4 is classical
  auto c = task_beta_counterexample_search(2, Prime(3), 9, 25);
  CHECK(c.verdict == Verdict::confirmed);
  auto zero = task_beta_counterexample_search(1, Prime(3), 5, 0);
  CHECK(zero.forms_examined == 0);
  CHECK(zero.exceptions.empty());
}

TEST_CASE("report checksums ignore wall time but cover content") {
  TaskReport r;
  r.task = "demo";
  r.params = {{"p", "5"}};
  r.forms_examined = 10;
  r.verdict = Verdict::confirmed;
  r.wall_ms = 1;
  std::string c1 = report_checksum(r);
  r.wall_ms = 999;
  CHECK(report_checksum(r) == c1);
  r.exceptions.push_back("x^2 mod 5");
  CHECK(report_checksum(r) != c1);
}
