#include "pform/gfp.hpp"

#include <algorithm>
#include <numeric>

namespace pform {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint32_t d = 3; std::uint64_t(d) * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint32_t value) : value_(value) {
  if (!is_prime_u32(value)) {
    throw std::invalid_argument("Prime: " + std::to_string(value) +
                                " is not prime");
  }
}

fp_t fp_reduce(std::int64_t a, const Prime& p) {
  std::int64_t m = a % std::int64_t(p.value());
  if (m < 0) m += p.value();
  return static_cast<fp_t>(m);
}

fp_t mod_pow(fp_t base, std::uint64_t exp, const Prime& p) {
  std::uint64_t result = 1;
  std::uint64_t b = base % p.value();
  while (exp > 0) {
    if (exp & 1) result = (result * b) % p.value();
    b = (b * b) % p.value();
    exp >>= 1;
  }
  return static_cast<fp_t>(result);
}

fp_t fp_inv(fp_t a, const Prime& p) {
  if (a == 0) throw std::invalid_argument("fp_inv: zero has no inverse");
  return mod_pow(a, p.value() - 2, p);
}

int legendre_symbol(fp_t a, const Prime& p) {
  if (!p.is_odd()) {
    throw std::invalid_argument("legendre_symbol: p must be odd");
  }
  if (a == 0) return 0;
  fp_t e = mod_pow(a, (p.value() - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

fp_t least_nonresidue(const Prime& p) {
  if (!p.is_odd()) {
    throw std::invalid_argument("least_nonresidue: p must be odd");
  }
  for (fp_t a = 2; a < p.value(); ++a) {
    if (legendre_symbol(a, p) == -1) return a;
  }
  throw std::logic_error("least_nonresidue: none found");
}

std::uint32_t ResidueClassTable::coset_of(fp_t unit) const {
  if (unit == 0 || unit >= prime.value()) {
    throw std::invalid_argument("coset_of: argument is not a unit");
  }
  return membership[unit];
}

ResidueClassTable power_classes(const Prime& p, std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("power_classes: k must be >= 1");
  const std::uint32_t pv = p.value();

  ResidueClassTable table{p, k, {}, std::vector<std::uint32_t>(pv, 0), {}};

  std::vector<bool> is_kth(pv, false);
  for (fp_t u = 1; u < pv; ++u) is_kth[mod_pow(u, k, p)] = true;
  for (fp_t v = 1; v < pv; ++v) {
    if (is_kth[v]) table.kth_powers_.push_back(v);
  }

  // Greedy coset assignment in increasing unit order makes each
  // representative the smallest member of its coset, with 1 first.
  std::vector<bool> assigned(pv, false);
  for (fp_t u = 1; u < pv; ++u) {
    if (assigned[u]) continue;
    std::uint32_t idx = static_cast<std::uint32_t>(table.classes.size());
    table.classes.push_back(u);
    for (fp_t s : table.kth_powers_) {
      fp_t member = fp_mul(u, s, p);
      if (!assigned[member]) {
        assigned[member] = true;
        table.membership[member] = idx;
      }
    }
  }
  return table;
}

}  // namespace pform
