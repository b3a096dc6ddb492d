// bounds.hpp
//
// Exact integer engine for the quasi-diagonalization bound recursion:
// upper bounds beta(r, m; Q_p) for systems of r quadratic forms, the
// phi_d(p) table for diagonal forms, the degree-lowering profile step,
// and the closed-form chains that evaluate v_3 and v_4 bounds. All
// arithmetic is checked 64-bit; every result carries a replayable trace.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pform/gfp.hpp"

namespace pform {

// Checked arithmetic; throws std::overflow_error on wraparound.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t exact_div(std::int64_t a, std::int64_t b);
std::int64_t binomial_i64(std::int64_t n, std::int64_t k);

// One applied rule: replayable as rule(inputs) == output.
struct TraceStep {
  std::string rule;
  std::vector<std::int64_t> inputs;
  std::int64_t output = 0;
};

struct BoundTrace {
  std::vector<TraceStep> steps;

  void add(std::string rule, std::vector<std::int64_t> inputs,
           std::int64_t output);
  std::int64_t final_value() const;
  std::string to_string() const;
};

// Recomputes every step from its rule name and inputs.
bool replay_trace(const BoundTrace& trace);

// Largest n admitting r quadratic forms over Q_p with no common zero on
// a projective-dimension-m linear subspace. The small-r anchors are
// table values; larger r follow quadratic closed forms, with the small-p
// and large-p (p >= 11) regimes distinguished. m adds (r+1)m.
std::int64_t beta_upper(std::int64_t r, const Prime& p, std::int64_t m = 0);

// Named rewrite rules backing the beta table; used to regenerate it.
std::int64_t beta_rule_double_step(std::int64_t beta_r_minus_2);       // 8 + 2b
std::int64_t beta_rule_subspace(std::int64_t beta_r, std::int64_t r,
                                std::int64_t m);                       // b + (r+1)m
std::int64_t beta_rule_pair_elim(std::int64_t beta_r_minus_2,
                                 std::int64_t r);                      // b + 8(r-1)
std::int64_t beta_rule_triple_elim(std::int64_t beta_r_minus_3,
                                   std::int64_t r);                    // b + 12(r-2)

// Rebuilds beta(r) for 1 <= r <= r_max from the anchors and the rewrite
// rules alone; diffing against beta_upper guards the closed forms.
std::vector<std::int64_t> regenerate_beta_table(bool large_p,
                                                std::int64_t r_max);

// Largest n admitting a diagonal degree-d form over Q_p with only the
// trivial zero; exact table for d in {3, 4}.
std::int64_t phi(std::uint32_t d, const Prime& p);

// Counts r_d, ..., r_1 of forms of each degree in a system.
struct SystemProfile {
  Prime prime;
  std::uint32_t top_degree;
  std::vector<std::int64_t> counts;  // counts[j-1] = number of degree-j forms

  std::int64_t count(std::uint32_t degree) const;
  void set_count(std::uint32_t degree, std::int64_t value);
  std::string to_string() const;
};

// One quasi-diagonalization step: removes a top-degree form, adding the
// derived lower-degree forms; returns the new profile plus the additive
// phi_d(p) term of the basic estimate.
struct WooleyStep {
  SystemProfile profile;
  std::int64_t additive_constant;
};
WooleyStep wooley_step(const SystemProfile& s);
// Sharpened variant: the same profile map without the additive term.
SystemProfile wooley_step_improved(const SystemProfile& s);

// Moves linear forms out of a profile; they re-enter as +r_1 variables.
std::pair<SystemProfile, std::int64_t> strip_linear(const SystemProfile& s);

enum class V3Variant {
  chain_with_linear_head,  // a*psi head plus quadratic-system tail
  chain,                   // same tail, head absorbed by the sharpening
  chain_subspace_start,    // induction started from the subspace bound
};

struct BoundResult {
  std::int64_t value = 0;
  BoundTrace trace;
};

BoundResult v3_bound(std::int64_t a, std::int64_t b, std::int64_t c,
                     const Prime& p, V3Variant variant);

enum class V4Method {
  full_chain,      // complete degree-lowering chain (CLI: med1)
  improved_chain,  // sharpened chain; p = 2 routes through the two-unit
                   // level construction profile (CLI: improved)
  hybrid,          // non-singular-zero machinery: 16 + beta(8), or the
                   // p = 5 variant 40 + beta(12) (CLI: hybrid)
};

BoundResult v4_bound(const Prime& p, V4Method method);

// The full table of certified numbers, one per line; compared against a
// golden file by the tests and printed by `bounds table`.
std::string bounds_table();

}  // namespace pform
