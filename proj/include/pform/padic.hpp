// padic.hpp
//
// Truncated p-adic integer arithmetic and Hensel lifting. An element is a
// residue mod p^k; arithmetic propagates the minimum of the operand
// precisions. Residues are stored in 64 bits, so p^k must stay below 2^63.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pform/forms.hpp"
#include "pform/gfp.hpp"

namespace pform {

// Default working precisions; every lifting condition used by the tasks
// has comfortable slack at these levels.
std::uint32_t default_precision(const Prime& p);  // 12 for p = 2, 8 otherwise

std::uint64_t pow_u64(std::uint64_t base, std::uint32_t exp);  // checked < 2^63

class PadicInt {
public:
  PadicInt(const Prime& p, std::uint32_t precision, std::int64_t value);
  static PadicInt from_residue(const Prime& p, std::uint32_t precision,
                               std::uint64_t residue);

  const Prime& prime() const { return prime_; }
  std::uint32_t precision() const { return precision_; }
  std::uint64_t residue() const { return residue_; }
  std::uint64_t modulus() const { return modulus_; }

  // Largest e < precision with p^e dividing the residue; nullopt when the
  // residue is 0, meaning "at least the precision".
  std::optional<std::uint32_t> valuation() const;
  bool is_unit() const { return residue_ % prime_.value() != 0; }
  bool is_zero() const { return residue_ == 0; }

  fp_t theta() const { return static_cast<fp_t>(residue_ % prime_.value()); }

  PadicInt operator+(const PadicInt& o) const;
  PadicInt operator-(const PadicInt& o) const;
  PadicInt operator*(const PadicInt& o) const;
  PadicInt operator-() const;
  bool operator==(const PadicInt& o) const;

  PadicInt pow(std::uint32_t e) const;
  // Multiplicative inverse; requires a unit.
  PadicInt inverse() const;
  // Exact division by p^e; requires v(x) >= e. Precision drops by e.
  PadicInt shift_down(std::uint32_t e) const;
  PadicInt with_precision(std::uint32_t k) const;  // truncate or extend-by-0

private:
  Prime prime_;
  std::uint32_t precision_;
  std::uint64_t modulus_;
  std::uint64_t residue_;
};

struct UnivariatePadicPoly {
  Prime prime;
  std::uint32_t precision;
  std::vector<PadicInt> coefficients;  // coefficients[i] multiplies x^i

  static UnivariatePadicPoly from_integers(const Prime& p,
                                           std::uint32_t precision,
                                           const std::vector<std::int64_t>& c);
  PadicInt evaluate(const PadicInt& x) const;
  PadicInt derivative_at(const PadicInt& x) const;
};

struct LiftCertificate {
  PadicInt root;
  std::uint32_t residual_valuation;    // clamped at the working precision
  std::uint32_t derivative_valuation;  // at the starting point
};

class HenselError : public std::runtime_error {
public:
  HenselError(const std::string& what, std::optional<std::uint32_t> fval,
              std::optional<std::uint32_t> dval)
      : std::runtime_error(what), value_valuation(fval),
        derivative_valuation(dval) {}
  std::optional<std::uint32_t> value_valuation;
  std::optional<std::uint32_t> derivative_valuation;
};

// Newton iteration from x0 under the strict condition
// v(f(x0)) > 2 v(f'(x0)); converges to a root mod p^precision that is
// congruent to x0 mod p^(v(f'(x0))+1).
LiftCertificate hensel_lift_root(const UnivariatePadicPoly& f,
                                 const PadicInt& x0);

// Fourth root in Z_2 of A = 1 (mod 16): one pre-correction step
// x0 = 1 + (A-1)/4 establishes the Hensel condition, then Newton runs.
// Unit fourth powers in Z_2 are exactly the class 1 mod 16, so other
// units are rejected.
PadicInt fourth_root_2adic(const PadicInt& a);

// A multivariate form with p-adic integer coefficients.
class PadicForm {
public:
  PadicForm(const Prime& p, std::uint32_t precision, std::size_t n_vars,
            std::uint32_t degree);

  const Prime& prime() const { return prime_; }
  std::uint32_t precision() const { return precision_; }
  std::size_t n_vars() const { return n_vars_; }
  std::uint32_t degree() const { return degree_; }
  const std::map<Monomial, std::uint64_t>& terms() const { return terms_; }

  void add_term(const Monomial& exponents, std::int64_t coeff);
  void add_term_residue(const Monomial& exponents, std::uint64_t residue);

  PadicInt evaluate(const std::vector<PadicInt>& point) const;
  std::vector<PadicInt> gradient(const std::vector<PadicInt>& point) const;

  Form reduced_mod_p() const;  // theta applied to every coefficient
  PadicForm operator*(const PadicForm& o) const;
  PadicForm operator+(const PadicForm& o) const;
  PadicForm scaled(const PadicInt& c) const;

private:
  Prime prime_;
  std::uint32_t precision_;
  std::uint64_t modulus_;
  std::size_t n_vars_;
  std::uint32_t degree_;
  std::map<Monomial, std::uint64_t> terms_;
};

// Lifts a point that reduces to a non-singular zero mod p to a zero of F
// mod p^precision, adjusting one coordinate whose partial is a unit.
std::vector<PadicInt> lift_nonsingular_point(const PadicForm& F,
                                             const std::vector<fp_t>& point);

}  // namespace pform
