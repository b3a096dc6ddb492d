// gfp.hpp
//
// Prime-field scalar arithmetic: canonical residues in [0, p), modular
// exponentiation, Legendre symbols, and k-th power residue class tables.
// Everything here is a pure function on immutable values.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pform {

using fp_t = std::uint32_t;

// A validated prime modulus. Construction checks primality by trial
// division; the sweep entry points additionally restrict to p < 50.
class Prime {
public:
  explicit Prime(std::uint32_t value);

  std::uint32_t value() const { return value_; }
  bool is_odd() const { return value_ != 2; }

  bool operator==(const Prime& other) const { return value_ == other.value_; }
  bool operator!=(const Prime& other) const { return value_ != other.value_; }

private:
  std::uint32_t value_;
};

bool is_prime_u32(std::uint32_t n);

// Canonical residue of a (possibly negative) integer.
fp_t fp_reduce(std::int64_t a, const Prime& p);

inline fp_t fp_add(fp_t a, fp_t b, const Prime& p) {
  fp_t s = a + b;
  return s >= p.value() ? s - p.value() : s;
}

inline fp_t fp_sub(fp_t a, fp_t b, const Prime& p) {
  return a >= b ? a - b : a + p.value() - b;
}

inline fp_t fp_mul(fp_t a, fp_t b, const Prime& p) {
  return static_cast<fp_t>((std::uint64_t(a) * b) % p.value());
}

inline fp_t fp_neg(fp_t a, const Prime& p) {
  return a == 0 ? 0 : p.value() - a;
}

// base^exp mod p. exp = 0 returns 1, including for base 0.
fp_t mod_pow(fp_t base, std::uint64_t exp, const Prime& p);

// Multiplicative inverse of a nonzero residue.
fp_t fp_inv(fp_t a, const Prime& p);

// Legendre symbol (a/p) for odd p: 0 for a = 0, +1 for nonzero squares,
// -1 otherwise. Agrees with Euler's criterion a^((p-1)/2).
int legendre_symbol(fp_t a, const Prime& p);

// Least quadratic non-residue of an odd prime.
fp_t least_nonresidue(const Prime& p);

// Cosets of the k-th powers (F_p^*)^k inside F_p^*.
//
// classes[i] is the smallest positive member of coset i; coset 0 is the
// subgroup of k-th powers itself (representative 1). membership maps each
// unit to its coset index.
struct ResidueClassTable {
  Prime prime;
  std::uint32_t power = 1;
  std::vector<fp_t> classes;
  std::vector<std::uint32_t> membership;  // indexed by unit value, [1, p)

  std::size_t class_count() const { return classes.size(); }
  std::uint32_t coset_of(fp_t unit) const;
  const std::vector<fp_t>& kth_powers() const { return kth_powers_; }

  std::vector<fp_t> kth_powers_;
};

ResidueClassTable power_classes(const Prime& p, std::uint32_t k);

}  // namespace pform
