// verify.hpp
//
// Named verification tasks. Each task runs a deterministic sweep (or a
// fixed set of checks), producing a TaskReport whose exception list and
// checksum are identical across runs and worker counts.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pform/forms.hpp"
#include "pform/fpsearch.hpp"

namespace pform {

enum class Verdict {
  confirmed,               // exceptions match the expected (usually empty) set
  refuted,                 // a claim checked by the task failed outright
  exceptions_as_expected,  // nonempty exception set, exactly as predicted
  unresolved,              // findings outside the certified claims
};

std::string verdict_name(Verdict v);

struct TaskOptions {
  unsigned workers = 1;
  std::uint64_t block_size = 1ull << 16;
  std::function<void(std::uint64_t, std::uint64_t)> progress;  // done, total
};

struct TaskReport {
  std::string task;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t forms_examined = 0;
  std::vector<std::string> exceptions;  // canonical form literals
  Verdict verdict = Verdict::refuted;
  std::uint64_t wall_ms = 0;
};

// Checksum over all report content except the wall time.
std::string report_checksum(const TaskReport& report);

// Forms a*x^3 + b*x*y^2 + c*y^3 + (d*x + e*y)*z^2 + f*z^3 with acf != 0
// always have a non-singular zero when p != 3; expected exceptions: none.
TaskReport task_cl(const Prime& p, const TaskOptions& options = {});

// For every binary quartic A*x^4 + B*x*y^3 + C*y^4 (AC != 0) there is a
// split quadratic q such that every extension
// f + D*q*z^2 + E*x*z^3 + F*y*z^3 + G*z^4 (G != 0) has a non-singular
// zero, up to the two excused exception classes. Runs at the primes
// where the claim rests on exhaustive search: 3, 7, 11, 17, 19, 23, 31.
struct MykeyCase1Result {
  TaskReport report;
  // Index of the first acceptable q per admissible f, in canonical f
  // order; the candidate list is x(x-alpha*y), xy, then general split
  // quadratics in lex order.
  std::vector<std::uint32_t> q_choice;
  std::vector<std::string> q_literals;  // candidate list actually used
};
MykeyCase1Result task_mykey_case1(const Prime& p,
                                  const TaskOptions& options = {});

// p = 5: h(x,y) + D*x*z^3 + E*y*z^3 + F*z^4 sweep; the exceptions are
// exactly three families up to variable permutation.
TaskReport task_mykey51(const TaskOptions& options = {});

// p = 5: 2x^4+y^4+z^4 + (A*xy+B*xz+C*yz)*w^2 + (D*x+E*y+F*z)*w^3 + G*w^4
// always has a non-singular zero; 62500 forms.
TaskReport task_mykey52(const TaskOptions& options = {});

// Quintic curve shapes with three singular unit points, swept over the
// torus-canonical slice; 13 <= p < 47.
TaskReport task_quintic(const Prime& p, const TaskOptions& options = {});

// The two substitution identities over F_13 and F_29 plus both
// non-similarity claims.
TaskReport task_identities();

// Diagonal ternary quartics over F_13 / F_29 lacking non-singular zeros
// are similar, up to permutation, to a single stated form.
TaskReport task_badform_exceptions(const Prime& p,
                                   const TaskOptions& options = {});

// (x_1^2 + ... + x_{n-1}^2)^2 - nu*x_n^4 has no non-singular zero mod p,
// nu the least non-residue.
TaskReport task_bad_family(const Prime& p, std::size_t n);

// Randomized search for r quadratic forms in n > 4r variables with no
// common zero mod p^2; certifies nothing.
TaskReport task_beta_counterexample_search(std::uint32_t r, const Prime& p,
                                           std::size_t n,
                                           std::uint64_t budget);

// Internal families exposed for cross-checking the table-driven fast
// evaluation paths against the generic Form path.
Form cl_form_at(const Prime& p, std::uint64_t index);
std::uint64_t cl_family_size(const Prime& p);
bool cl_passes_fast(const Prime& p, std::uint64_t index);
Form quintic_form_at(const Prime& p, std::uint64_t index);
std::uint64_t quintic_family_size(const Prime& p);
bool quintic_passes_fast(const Prime& p, std::uint64_t index);
bool quintic_passes_generic(const Prime& p, std::uint64_t index);
Form mykey51_form_at(std::uint64_t index);
bool mykey51_passes_fast(std::uint64_t index);
Form mykey52_form_at(std::uint64_t index);
bool mykey52_passes_fast(std::uint64_t index);

// Recomputes the first acceptable split quadratic for the f at the given
// family index with the generic evaluator only; used to pin the fast
// path. Returns -1 when no candidate is acceptable.
std::int64_t mykey_case1_first_q_generic(const Prime& p, std::uint64_t index);

// The explicit quintic exception published for p = 13.
Form quintic_known_exception_p13();

}  // namespace pform
