#include "pform/fpsearch.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>

namespace pform {

std::uint64_t projective_point_count(const Prime& p, std::size_t n) {
  std::uint64_t count = 0;
  std::uint64_t power = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count += power;
    power *= p.value();
  }
  return count;  // 1 + p + ... + p^(n-1)
}

std::vector<ProjectivePoint> projective_points(const Prime& p, std::size_t n) {
  if (n < 1) throw std::invalid_argument("projective_points: n must be >= 1");
  std::vector<ProjectivePoint> points;
  points.reserve(projective_point_count(p, n));
  // Lexicographic order: leading-one position runs from the last
  // coordinate backwards, free suffix enumerated in lex order.
  for (std::size_t lead = n; lead-- > 0;) {
    std::vector<fp_t> coords(n, 0);
    coords[lead] = 1;
    const std::size_t free_count = n - lead - 1;
    while (true) {
      points.push_back(ProjectivePoint{coords});
      std::size_t i = free_count;
      while (i > 0) {
        std::size_t pos = lead + i;
        if (coords[pos] + 1 < p.value()) {
          coords[pos] += 1;
          break;
        }
        coords[pos] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  // The loop above emits blocks in order lead = n-1 (prefix of zeros,
  // e.g. (0,...,0,1)) down to lead = 0, which is ascending lex order.
  return points;
}

ZeroReport count_and_witness(const Form& f) {
  if (f.is_zero()) throw std::invalid_argument("count_and_witness: zero form");
  if (f.n_vars() < 2) {
    throw std::invalid_argument("count_and_witness: need at least 2 variables");
  }
  ZeroReport report;
  for (const auto& pt : projective_points(f.prime(), f.n_vars())) {
    if (f.evaluate(pt.coords) != 0) continue;
    report.total_points += 1;
    auto grad = f.gradient(pt.coords);
    bool singular = std::all_of(grad.begin(), grad.end(),
                                [](fp_t g) { return g == 0; });
    if (singular) {
      report.singular_points += 1;
    } else if (!report.nonsingular_witness) {
      report.nonsingular_witness = pt;
    }
  }
  return report;
}

bool has_nonsingular_zero(const Form& f) {
  if (f.is_zero()) throw std::invalid_argument("has_nonsingular_zero: zero form");
  for (const auto& pt : projective_points(f.prime(), f.n_vars())) {
    if (f.evaluate(pt.coords) != 0) continue;
    auto grad = f.gradient(pt.coords);
    for (fp_t g : grad) {
      if (g != 0) return true;
    }
  }
  return false;
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("PFORM_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

SweepResult sweep(const SweepFamily& family, const SweepOptions& options) {
  const std::uint64_t total = family.size();
  const std::uint64_t block_size = std::max<std::uint64_t>(1, options.block_size);
  const std::uint64_t n_blocks = (total + block_size - 1) / block_size;
  const unsigned workers = std::max(1u, options.workers);

  std::vector<std::vector<std::uint64_t>> block_exceptions(n_blocks);
  std::atomic<std::uint64_t> next_block{0};
  std::atomic<std::uint64_t> done_indices{0};

  auto run_worker = [&]() {
    while (true) {
      std::uint64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
      if (b >= n_blocks) break;
      const std::uint64_t lo = b * block_size;
      const std::uint64_t hi = std::min(total, lo + block_size);
      std::vector<std::uint64_t> local;
      for (std::uint64_t i = lo; i < hi; ++i) {
        if (!family.passes(i)) local.push_back(i);
      }
      block_exceptions[b] = std::move(local);
      done_indices.fetch_add(hi - lo, std::memory_order_relaxed);
    }
  };

  if (workers == 1 && !options.progress) {
    run_worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_worker);
    if (options.progress) {
      using namespace std::chrono_literals;
      while (done_indices.load(std::memory_order_relaxed) < total) {
        options.progress(done_indices.load(std::memory_order_relaxed), total);
        std::this_thread::sleep_for(500ms);
      }
    }
    for (auto& t : pool) t.join();
    if (options.progress) options.progress(total, total);
  }

  SweepResult result;
  result.examined = total;
  for (auto& block : block_exceptions) {
    result.exceptions.insert(result.exceptions.end(), block.begin(), block.end());
  }
  return result;
}

}  // namespace pform
