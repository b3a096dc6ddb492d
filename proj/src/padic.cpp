#include "pform/padic.hpp"

#include <algorithm>

namespace pform {

std::uint32_t default_precision(const Prime& p) {
  return p.value() == 2 ? 12 : 8;
}

std::uint64_t pow_u64(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (r > (std::uint64_t(1) << 62) / base) {
      throw std::overflow_error("pow_u64: p^k exceeds 2^63");
    }
    r *= base;
  }
  return r;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

}  // namespace

PadicInt::PadicInt(const Prime& p, std::uint32_t precision, std::int64_t value)
    : prime_(p), precision_(precision), modulus_(pow_u64(p.value(), precision)) {
  if (precision < 1) throw std::invalid_argument("PadicInt: precision >= 1");
  std::int64_t m = value % static_cast<std::int64_t>(modulus_);
  if (m < 0) m += static_cast<std::int64_t>(modulus_);
  residue_ = static_cast<std::uint64_t>(m);
}

PadicInt PadicInt::from_residue(const Prime& p, std::uint32_t precision,
                                std::uint64_t residue) {
  PadicInt x(p, precision, 0);
  x.residue_ = residue % x.modulus_;
  return x;
}

std::optional<std::uint32_t> PadicInt::valuation() const {
  if (residue_ == 0) return std::nullopt;
  std::uint32_t v = 0;
  std::uint64_t r = residue_;
  while (r % prime_.value() == 0) {
    r /= prime_.value();
    ++v;
  }
  return v;
}

namespace {

std::uint32_t joint_precision(const PadicInt& a, const PadicInt& b) {
  if (a.prime() != b.prime()) {
    throw std::invalid_argument("PadicInt: mixed primes");
  }
  return std::min(a.precision(), b.precision());
}

}  // namespace

PadicInt PadicInt::operator+(const PadicInt& o) const {
  std::uint32_t k = joint_precision(*this, o);
  std::uint64_t m = pow_u64(prime_.value(), k);
  return from_residue(prime_, k, (residue_ % m + o.residue_ % m) % m);
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
  std::uint32_t k = joint_precision(*this, o);
  std::uint64_t m = pow_u64(prime_.value(), k);
  std::uint64_t a = residue_ % m, b = o.residue_ % m;
  return from_residue(prime_, k, a >= b ? a - b : a + m - b);
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
  std::uint32_t k = joint_precision(*this, o);
  std::uint64_t m = pow_u64(prime_.value(), k);
  return from_residue(prime_, k, mulmod_u64(residue_ % m, o.residue_ % m, m));
}

PadicInt PadicInt::operator-() const {
  return from_residue(prime_, precision_,
                      residue_ == 0 ? 0 : modulus_ - residue_);
}

bool PadicInt::operator==(const PadicInt& o) const {
  return prime_ == o.prime_ && precision_ == o.precision_ &&
         residue_ == o.residue_;
}

PadicInt PadicInt::pow(std::uint32_t e) const {
  PadicInt r = from_residue(prime_, precision_, 1);
  PadicInt b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

PadicInt PadicInt::inverse() const {
  if (!is_unit()) throw std::invalid_argument("PadicInt::inverse: not a unit");
  // Newton iteration x -> x(2 - a x) doubles correct digits each round.
  std::uint64_t inv = mod_pow(static_cast<fp_t>(residue_ % prime_.value()),
                              prime_.value() - 2, prime_);
  for (std::uint32_t bits = 1; bits < precision_; bits *= 2) {
    unsigned __int128 prod = static_cast<unsigned __int128>(residue_) * inv % modulus_;
    std::uint64_t two_minus = (2 + modulus_ - static_cast<std::uint64_t>(prod)) % modulus_;
    inv = mulmod_u64(inv, two_minus, modulus_);
  }
  return from_residue(prime_, precision_, inv);
}

PadicInt PadicInt::shift_down(std::uint32_t e) const {
  if (e == 0) return *this;
  if (e >= precision_) {
    throw std::invalid_argument("PadicInt::shift_down: precision exhausted");
  }
  std::uint64_t pe = pow_u64(prime_.value(), e);
  if (residue_ % pe != 0) {
    throw std::invalid_argument("PadicInt::shift_down: valuation too small");
  }
  return from_residue(prime_, precision_ - e, residue_ / pe);
}

PadicInt PadicInt::with_precision(std::uint32_t k) const {
  return from_residue(prime_, k, residue_);
}

UnivariatePadicPoly UnivariatePadicPoly::from_integers(
    const Prime& p, std::uint32_t precision,
    const std::vector<std::int64_t>& c) {
  UnivariatePadicPoly poly{p, precision, {}};
  poly.coefficients.reserve(c.size());
  for (auto v : c) poly.coefficients.emplace_back(p, precision, v);
  return poly;
}

PadicInt UnivariatePadicPoly::evaluate(const PadicInt& x) const {
  PadicInt acc(prime, precision, 0);
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    acc = acc * x + coefficients[i];
  }
  return acc;
}

PadicInt UnivariatePadicPoly::derivative_at(const PadicInt& x) const {
  PadicInt acc(prime, precision, 0);
  for (std::size_t i = coefficients.size(); i-- > 1;) {
    PadicInt scale(prime, precision, static_cast<std::int64_t>(i));
    acc = acc * x + coefficients[i] * scale;
  }
  return acc;
}

LiftCertificate hensel_lift_root(const UnivariatePadicPoly& f,
                                 const PadicInt& x0) {
  const std::uint32_t k = f.precision;

  PadicInt fx = f.evaluate(x0);
  PadicInt dx = f.derivative_at(x0);
  auto vf = fx.valuation();
  auto vd = dx.valuation();

  if (!vd) {
    throw HenselError("Hensel condition fails: derivative vanishes to full precision",
                      vf, vd);
  }
  std::uint32_t fval = vf ? *vf : k;
  if (!(fval > 2 * (*vd))) {
    throw HenselError("Hensel condition fails: v(f(x0)) = " +
                          std::to_string(fval) + " <= 2*v(f'(x0)) = " +
                          std::to_string(2 * (*vd)),
                      vf, vd);
  }
  const std::uint32_t delta = *vd;

  PadicInt x = x0;
  std::uint32_t max_iters = 2;
  for (std::uint32_t t = k; t > 1; t /= 2) ++max_iters;  // ceil(log2 k) + 2

  for (std::uint32_t iter = 0; iter <= max_iters; ++iter) {
    fx = f.evaluate(x);
    if (fx.is_zero()) break;
    dx = f.derivative_at(x);
    // x <- x - f(x)/f'(x); both sides divisible by p^delta.
    PadicInt num = fx.shift_down(delta);
    PadicInt den = dx.shift_down(delta);
    PadicInt step = (num * den.inverse()).with_precision(k);
    x = x - step;
    if (iter == max_iters) {
      throw HenselError("Hensel iteration failed to converge", fx.valuation(),
                        dx.valuation());
    }
  }
  fx = f.evaluate(x);
  std::uint32_t rv = fx.is_zero() ? k : *fx.valuation();
  if (rv < k) {
    throw HenselError("Hensel iteration stalled short of precision",
                      fx.valuation(), vd);
  }
  return LiftCertificate{x, rv, delta};
}

PadicInt fourth_root_2adic(const PadicInt& a) {
  if (a.prime().value() != 2) {
    throw std::invalid_argument("fourth_root_2adic: prime must be 2");
  }
  const std::uint32_t k = a.precision();
  Prime two(2);
  if (a.residue() == 1) return PadicInt(two, k, 1);
  if (k < 5) {
    throw std::invalid_argument("fourth_root_2adic: need precision >= 5");
  }
  if (a.residue() % 16 != 1) {
    throw std::invalid_argument("fourth_root_2adic: not a fourth power (A != 1 mod 16)");
  }

  // x0 = 1 + (A-1)/4 gives v(x0^4 - A) >= 5 > 4 = 2 v(4 x0^3).
  std::uint64_t x0r = 1 + (a.residue() - 1) / 4;
  UnivariatePadicPoly f{two, k, {}};
  f.coefficients = {-a, PadicInt(two, k, 0), PadicInt(two, k, 0),
                    PadicInt(two, k, 0), PadicInt(two, k, 1)};
  return hensel_lift_root(f, PadicInt::from_residue(two, k, x0r)).root;
}

PadicForm::PadicForm(const Prime& p, std::uint32_t precision,
                     std::size_t n_vars, std::uint32_t degree)
    : prime_(p), precision_(precision),
      modulus_(pow_u64(p.value(), precision)), n_vars_(n_vars),
      degree_(degree) {
  if (n_vars < 1 || degree < 1) {
    throw std::invalid_argument("PadicForm: bad dimensions");
  }
}

void PadicForm::add_term(const Monomial& exponents, std::int64_t coeff) {
  std::int64_t m = coeff % static_cast<std::int64_t>(modulus_);
  if (m < 0) m += static_cast<std::int64_t>(modulus_);
  add_term_residue(exponents, static_cast<std::uint64_t>(m));
}

void PadicForm::add_term_residue(const Monomial& exponents,
                                 std::uint64_t residue) {
  if (exponents.size() != n_vars_) {
    throw std::invalid_argument("PadicForm::add_term: exponent length");
  }
  std::uint32_t total = 0;
  for (auto e : exponents) total += e;
  if (total != degree_) {
    throw std::invalid_argument("PadicForm::add_term: degree mismatch");
  }
  residue %= modulus_;
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    if (residue != 0) terms_.emplace(exponents, residue);
  } else {
    it->second = (it->second + residue) % modulus_;
    if (it->second == 0) terms_.erase(it);
  }
}

PadicInt PadicForm::evaluate(const std::vector<PadicInt>& point) const {
  if (point.size() != n_vars_) {
    throw std::invalid_argument("PadicForm::evaluate: dimension mismatch");
  }
  PadicInt acc(prime_, precision_, 0);
  for (const auto& [mono, c] : terms_) {
    PadicInt t = PadicInt::from_residue(prime_, precision_, c);
    for (std::size_t i = 0; i < n_vars_; ++i) {
      if (mono[i] != 0) t = t * point[i].with_precision(precision_).pow(mono[i]);
    }
    acc = acc + t;
  }
  return acc;
}

std::vector<PadicInt> PadicForm::gradient(
    const std::vector<PadicInt>& point) const {
  if (point.size() != n_vars_) {
    throw std::invalid_argument("PadicForm::gradient: dimension mismatch");
  }
  std::vector<PadicInt> grad(n_vars_, PadicInt(prime_, precision_, 0));
  for (const auto& [mono, c] : terms_) {
    for (std::size_t v = 0; v < n_vars_; ++v) {
      if (mono[v] == 0) continue;
      PadicInt t = PadicInt::from_residue(prime_, precision_, c) *
                   PadicInt(prime_, precision_, mono[v]);
      for (std::size_t i = 0; i < n_vars_; ++i) {
        std::uint8_t e = mono[i];
        if (i == v) e -= 1;
        if (e != 0) t = t * point[i].with_precision(precision_).pow(e);
      }
      grad[v] = grad[v] + t;
    }
  }
  return grad;
}

Form PadicForm::reduced_mod_p() const {
  Form f(prime_, n_vars_, degree_);
  for (const auto& [mono, c] : terms_) {
    f.add_term(mono, static_cast<std::int64_t>(c % prime_.value()));
  }
  return f;
}

PadicForm PadicForm::operator*(const PadicForm& o) const {
  if (o.prime_ != prime_ || o.n_vars_ != n_vars_) {
    throw std::invalid_argument("PadicForm::operator*: incompatible");
  }
  std::uint32_t k = std::min(precision_, o.precision_);
  PadicForm out(prime_, k, n_vars_, degree_ + o.degree_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(n_vars_);
      for (std::size_t i = 0; i < n_vars_; ++i) {
        m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
      }
      out.add_term_residue(m, mulmod_u64(ca % out.modulus_, cb % out.modulus_,
                                         out.modulus_));
    }
  }
  return out;
}

PadicForm PadicForm::operator+(const PadicForm& o) const {
  if (o.prime_ != prime_ || o.n_vars_ != n_vars_ || o.degree_ != degree_) {
    throw std::invalid_argument("PadicForm::operator+: incompatible");
  }
  std::uint32_t k = std::min(precision_, o.precision_);
  PadicForm out(prime_, k, n_vars_, degree_);
  for (const auto& [m, c] : terms_) out.add_term_residue(m, c);
  for (const auto& [m, c] : o.terms_) out.add_term_residue(m, c);
  return out;
}

PadicForm PadicForm::scaled(const PadicInt& c) const {
  PadicForm out(prime_, std::min(precision_, c.precision()), n_vars_, degree_);
  for (const auto& [m, cv] : terms_) {
    out.add_term_residue(m, mulmod_u64(cv % out.modulus_,
                                       c.residue() % out.modulus_,
                                       out.modulus_));
  }
  return out;
}

std::vector<PadicInt> lift_nonsingular_point(const PadicForm& F,
                                             const std::vector<fp_t>& point) {
  const Prime& p = F.prime();
  const std::uint32_t k = F.precision();

  std::vector<PadicInt> x;
  x.reserve(point.size());
  for (fp_t c : point) x.emplace_back(p, k, c);

  Form fbar = F.reduced_mod_p();
  if (fbar.evaluate(point) != 0) {
    throw std::invalid_argument("lift_nonsingular_point: not a zero mod p");
  }
  auto gbar = fbar.gradient(point);
  std::size_t pivot = point.size();
  for (std::size_t i = 0; i < gbar.size(); ++i) {
    if (gbar[i] != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot == point.size()) {
    throw std::invalid_argument("lift_nonsingular_point: point is singular mod p");
  }

  // Newton along the pivot coordinate; its partial stays a unit.
  for (std::uint32_t iter = 0; iter < 2 * k + 4; ++iter) {
    PadicInt r = F.evaluate(x);
    if (r.is_zero()) return x;
    PadicInt d = F.gradient(x)[pivot];
    x[pivot] = x[pivot] - r * d.inverse();
  }
  throw std::logic_error("lift_nonsingular_point: failed to converge");
}

}  // namespace pform
