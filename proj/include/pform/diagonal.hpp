// diagonal.hpp
//
// Solvability of diagonal forms sum c_i x_i^d over Q_p.
//
// The decision oracle reduces to a finite check: a nontrivial zero exists
// iff, for some twist of the form by p^s (s < d, followed by exponent
// renormalization), there is a vector mod p^K with a unit coordinate on a
// valuation-0 coefficient and f = 0 mod p^K, where K = 2 v_p(d) + 1 is the
// univariate Hensel threshold at such a coordinate. The mod-p^K search is
// a subset-sum dynamic program over per-variable achievable value sets,
// with a flag tracking "liftable unit coordinate present". Witnesses are
// reconstructed from the DP and finished by Newton iteration.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pform/gfp.hpp"
#include "pform/padic.hpp"

namespace pform {

// One coefficient p^exponent * unit of a diagonal form, with the exponent
// normalized into [0, d) by variable rescaling.
struct DiagonalCoefficient {
  std::uint32_t exponent = 0;
  std::uint64_t unit = 1;  // unit residue at the form's working precision
};

class DiagonalForm {
public:
  DiagonalForm(const Prime& p, std::uint32_t degree,
               std::vector<DiagonalCoefficient> coeffs,
               std::uint32_t precision = 0);  // 0: default_precision(p)

  // Splits integer coefficients into p^e * unit and normalizes e mod d.
  static DiagonalForm from_integers(const Prime& p, std::uint32_t degree,
                                    const std::vector<std::int64_t>& coeffs,
                                    std::uint32_t precision = 0);

  const Prime& prime() const { return prime_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t precision() const { return precision_; }
  std::size_t n_vars() const { return coeffs_.size(); }
  const std::vector<DiagonalCoefficient>& coefficients() const {
    return coeffs_;
  }

  // Value of the form at a vector of p-adic integers.
  PadicInt evaluate(const std::vector<PadicInt>& x) const;
  PadicInt coefficient_value(std::size_t i, std::uint32_t precision) const;

  std::string to_string() const;

private:
  Prime prime_;
  std::uint32_t degree_;
  std::uint32_t precision_;
  std::vector<DiagonalCoefficient> coeffs_;
};

// Number of coefficients at each valuation level r in [0, d).
struct LevelProfile {
  std::vector<std::uint32_t> counts;

  static LevelProfile of(const DiagonalForm& f);
};

struct OracleResult {
  bool solvable = false;
  // Present when solvable: a primitive vector with f(witness) = 0 to the
  // form's working precision.
  std::vector<PadicInt> witness;
};

// Complete decision for degree in {2,3,4}, n_vars <= 24, p < 50.
OracleResult is_solvable_oracle(const DiagonalForm& f);

enum class SolveStatus {
  solved,       // verified zero found by the level construction
  not_decided,  // merge search exhausted without a four-level transversal
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::not_decided;
  std::vector<PadicInt> solution;  // primitive, residual 0 mod 2^precision
};

// Constructive solver for 2-adic diagonal quartics. Pipeline: compute the
// level profile; while no twist exposes levels {0,0,1,2,3}, merge two
// coefficients c_i = c_j (mod 4) chosen among three sharing a level
// (the merged variable pair takes a common value); once a transversal
// exists, run the greedy digit construction ending in a 2-adic fourth
// root. The merge search is bounded; callers fall back to the oracle on
// not_decided.
SolveOutcome solve_2adic_diagonal_quartic(const DiagonalForm& f,
                                          unsigned max_sequences = 64);

// True iff the stated lower-bound witness is certified unsolvable by the
// oracle. Requires n_vars equal to the table value phi_d(p).
bool phi_witness(const Prime& p, std::uint32_t degree, const DiagonalForm& f);

// Built-in unsolvable witness forms realizing the phi_d(p) table entries
// used by the tasks: (d,p) in {(3,2), (3,7), (4,2), (4,3), (4,5), (4,13)}.
DiagonalForm stored_phi_witness(std::uint32_t degree, const Prime& p);

// Exhaustive upper-bound completeness sweep: every diagonal degree-d form
// over Q_p in phi_d(p) + 1 variables is solvable. Solvability of a
// diagonal form depends only on the multiset of (exponent, unit mod p^K)
// pairs the oracle inspects, so enumerating those multisets covers the
// whole space. Desk-scale for d = 3 with p <= 7 and d = 4 with p = 3.
struct PhiUpperBoundSweep {
  bool all_solvable = true;
  std::uint64_t multisets_examined = 0;
};
PhiUpperBoundSweep verify_phi_upper_bound(std::uint32_t degree,
                                          const Prime& p);

// Q(q_1(x), ..., q_4(x)) for an anisotropic diagonal quaternary quadratic
// Q; rejects isotropic Q. The q_i must be quadratics in the same
// variables.
PadicForm compose_lb_quartic(const std::vector<PadicForm>& q,
                             const DiagonalForm& Q);

// Bounded search for a primitive zero mod p^k; used to spot-check
// composed forms on small variable counts.
bool has_primitive_zero_mod(const PadicForm& F, std::uint32_t k);

}  // namespace pform
