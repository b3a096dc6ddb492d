// fpsearch.hpp
//
// Projective point enumeration over F_p, non-singular-zero detection, and
// the block-partitioned sweep engine behind every verification task.
//
// Sweep determinism contract: the index space is split into contiguous
// blocks; workers claim blocks through an atomic counter but results are
// stored per block and merged in block order, so the exception list and
// all counts are identical for any worker count.

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "pform/forms.hpp"

namespace pform {

struct ProjectivePoint {
  std::vector<fp_t> coords;  // first nonzero coordinate is 1

  bool operator==(const ProjectivePoint& o) const { return coords == o.coords; }
};

// All (p^n - 1)/(p - 1) canonical representatives, in lexicographic
// order of the coordinate vectors.
std::vector<ProjectivePoint> projective_points(const Prime& p, std::size_t n);

std::uint64_t projective_point_count(const Prime& p, std::size_t n);

struct ZeroReport {
  std::uint64_t total_points = 0;     // projective zeros N
  std::uint64_t singular_points = 0;  // those with vanishing gradient
  std::optional<ProjectivePoint> nonsingular_witness;  // first in order
};

// Full count of projective zeros and singular zeros, plus the first
// non-singular zero in canonical order when one exists.
ZeroReport count_and_witness(const Form& f);

// Early-exit variant: stops at the first non-singular zero.
bool has_nonsingular_zero(const Form& f);

// A sweep family maps a dense index range onto candidate forms and a
// pass/fail predicate. Implementations must be pure functions of the index.
class SweepFamily {
public:
  virtual ~SweepFamily() = default;
  virtual std::uint64_t size() const = 0;
  virtual bool passes(std::uint64_t index) const = 0;
  // Reconstructs the candidate form for reporting and cross-checks.
  virtual Form form_at(std::uint64_t index) const = 0;
};

struct SweepResult {
  std::uint64_t examined = 0;
  std::vector<std::uint64_t> exceptions;  // failing indices, ascending
};

struct SweepOptions {
  unsigned workers = 1;
  std::uint64_t block_size = 1ull << 16;
  // Progress callback, invoked from the coordinating thread with
  // (indices done, total). Null disables progress reporting.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

SweepResult sweep(const SweepFamily& family, const SweepOptions& options);

unsigned default_worker_count();

}  // namespace pform
