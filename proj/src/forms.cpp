#include "pform/forms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pform {

LinearSubstitution LinearSubstitution::identity(const Prime& p,
                                                std::size_t n) {
  LinearSubstitution s{p, n, n, std::vector<fp_t>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) s.entries[i * n + i] = 1;
  return s;
}

Form::Form(const Prime& p, std::size_t n_vars, std::uint32_t degree)
    : prime_(p), n_vars_(n_vars), degree_(degree) {
  if (n_vars < 1) throw std::invalid_argument("Form: need at least 1 variable");
  if (degree < 1) throw std::invalid_argument("Form: degree must be >= 1");
}

void Form::add_term(const Monomial& exponents, std::int64_t coeff) {
  if (exponents.size() != n_vars_) {
    throw std::invalid_argument("Form::add_term: exponent vector length");
  }
  std::uint32_t total = 0;
  for (auto e : exponents) total += e;
  if (total != degree_) {
    throw std::invalid_argument("Form::add_term: monomial degree mismatch");
  }
  fp_t c = fp_reduce(coeff, prime_);
  if (c == 0 && terms_.find(exponents) == terms_.end()) return;
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    if (c != 0) terms_.emplace(exponents, c);
  } else {
    fp_t s = fp_add(it->second, c, prime_);
    if (s == 0) {
      terms_.erase(it);
    } else {
      it->second = s;
    }
  }
}

fp_t Form::coefficient(const Monomial& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? 0 : it->second;
}

fp_t Form::evaluate(const std::vector<fp_t>& point) const {
  if (point.size() != n_vars_) {
    throw std::invalid_argument("Form::evaluate: dimension mismatch");
  }
  std::uint64_t acc = 0;
  for (const auto& [mono, c] : terms_) {
    std::uint64_t t = c;
    for (std::size_t i = 0; i < n_vars_; ++i) {
      if (mono[i] != 0) t = (t * mod_pow(point[i], mono[i], prime_)) % prime_.value();
    }
    acc += t;
  }
  return static_cast<fp_t>(acc % prime_.value());
}

std::vector<fp_t> Form::gradient(const std::vector<fp_t>& point) const {
  if (point.size() != n_vars_) {
    throw std::invalid_argument("Form::gradient: dimension mismatch");
  }
  std::vector<std::uint64_t> acc(n_vars_, 0);
  for (const auto& [mono, c] : terms_) {
    for (std::size_t v = 0; v < n_vars_; ++v) {
      if (mono[v] == 0) continue;
      // Formal partial: e * c * x_v^(e-1) * rest.
      std::uint64_t t = (std::uint64_t(c) * (mono[v] % prime_.value())) %
                        prime_.value();
      if (t == 0) continue;
      for (std::size_t i = 0; i < n_vars_; ++i) {
        std::uint8_t e = mono[i];
        if (i == v) e -= 1;
        if (e != 0) t = (t * mod_pow(point[i], e, prime_)) % prime_.value();
      }
      acc[v] += t;
    }
  }
  std::vector<fp_t> grad(n_vars_);
  for (std::size_t v = 0; v < n_vars_; ++v) {
    grad[v] = static_cast<fp_t>(acc[v] % prime_.value());
  }
  return grad;
}

namespace {

// Dense-in-map polynomial product helper used by substitution.
using TermMap = std::map<Monomial, fp_t>;

TermMap multiply_maps(const TermMap& a, const TermMap& b, const Prime& p,
                      std::size_t n_vars) {
  TermMap out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m(n_vars);
      for (std::size_t i = 0; i < n_vars; ++i) {
        m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
      }
      fp_t c = fp_mul(ca, cb, p);
      if (c == 0) continue;
      auto it = out.find(m);
      if (it == out.end()) {
        out.emplace(std::move(m), c);
      } else {
        it->second = fp_add(it->second, c, p);
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

}  // namespace

Form Form::substituted(const LinearSubstitution& s) const {
  if (s.n_old != n_vars_ || s.prime != prime_) {
    throw std::invalid_argument("Form::substituted: dimension mismatch");
  }
  Form out(prime_, s.n_new, degree_);
  for (const auto& [mono, c] : terms_) {
    // Product over old variables of (row i linear form)^mono[i].
    TermMap prod;
    prod.emplace(Monomial(s.n_new, 0), c);
    for (std::size_t i = 0; i < n_vars_; ++i) {
      if (mono[i] == 0) continue;
      TermMap lin;
      for (std::size_t j = 0; j < s.n_new; ++j) {
        if (s.at(i, j) != 0) {
          Monomial m(s.n_new, 0);
          m[j] = 1;
          lin.emplace(std::move(m), s.at(i, j));
        }
      }
      for (std::uint8_t e = 0; e < mono[i]; ++e) {
        prod = multiply_maps(prod, lin, prime_, s.n_new);
      }
    }
    for (const auto& [m, cv] : prod) out.add_term(m, cv);
  }
  return out;
}

Form Form::scaled(fp_t a) const {
  Form out(prime_, n_vars_, degree_);
  for (const auto& [m, c] : terms_) out.add_term(m, fp_mul(c, a, prime_));
  return out;
}

Form Form::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_vars_) {
    throw std::invalid_argument("Form::permuted: permutation length");
  }
  Form out(prime_, n_vars_, degree_);
  for (const auto& [m, c] : terms_) {
    Monomial pm(n_vars_, 0);
    for (std::size_t i = 0; i < n_vars_; ++i) pm[perm[i]] = m[i];
    out.add_term(pm, c);
  }
  return out;
}

Form Form::operator*(const Form& g) const {
  if (g.prime_ != prime_ || g.n_vars_ != n_vars_) {
    throw std::invalid_argument("Form::operator*: incompatible forms");
  }
  Form out(prime_, n_vars_, degree_ + g.degree_);
  TermMap prod = multiply_maps(terms_, g.terms_, prime_, n_vars_);
  for (const auto& [m, c] : prod) out.add_term(m, c);
  return out;
}

Form Form::operator+(const Form& g) const {
  if (g.prime_ != prime_ || g.n_vars_ != n_vars_ || g.degree_ != degree_) {
    throw std::invalid_argument("Form::operator+: incompatible forms");
  }
  Form out = *this;
  for (const auto& [m, c] : g.terms_) out.add_term(m, c);
  return out;
}

bool Form::operator==(const Form& g) const {
  return prime_ == g.prime_ && n_vars_ == g.n_vars_ && degree_ == g.degree_ &&
         terms_ == g.terms_;
}

bool Form::operator<(const Form& g) const {
  if (prime_.value() != g.prime_.value())
    return prime_.value() < g.prime_.value();
  if (degree_ != g.degree_) return degree_ < g.degree_;
  if (n_vars_ != g.n_vars_) return n_vars_ < g.n_vars_;
  return std::lexicographical_compare(
      terms_.begin(), terms_.end(), g.terms_.begin(), g.terms_.end());
}

namespace {

std::string variable_name(std::size_t index, std::size_t n_vars) {
  static const char* named = "xyzw";
  if (n_vars <= 4) return std::string(1, named[index]);
  return "x" + std::to_string(index + 1);
}

}  // namespace

std::string Form::to_string() const {
  std::ostringstream os;
  if (terms_.empty()) {
    os << "0";
  } else {
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      bool any_var = false;
      for (auto e : m) any_var = any_var || e != 0;
      bool printed = false;
      if (c != 1 || !any_var) {
        os << c;
        printed = true;
      }
      for (std::size_t i = 0; i < n_vars_; ++i) {
        if (m[i] == 0) continue;
        if (printed) os << "*";
        os << variable_name(i, n_vars_);
        if (m[i] > 1) os << "^" << int(m[i]);
        printed = true;
      }
    }
  }
  os << " mod " << prime_.value();
  return os.str();
}

namespace {

bool next_scaling(std::vector<fp_t>& scales, fp_t pv) {
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (scales[i] + 1 < pv) {
      scales[i] += 1;
      return true;
    }
    scales[i] = 1;
  }
  return false;
}

}  // namespace

std::optional<SimilarityWitness> are_similar(const Form& f, const Form& g) {
  if (f.prime() != g.prime() || f.degree() != g.degree() ||
      f.n_vars() != g.n_vars()) {
    throw std::invalid_argument("are_similar: incompatible forms");
  }
  if (f.n_vars() > 3) {
    throw std::invalid_argument("are_similar: supported only for n_vars <= 3");
  }
  const Prime& p = f.prime();
  const std::size_t m = f.n_vars();
  if (f.is_zero() || g.is_zero()) {
    if (f.is_zero() && g.is_zero()) {
      return SimilarityWitness{1, std::vector<fp_t>(m, 1)};
    }
    return std::nullopt;
  }

  std::vector<fp_t> scales(m, 1);
  do {
    // Scale g's variables, then check proportionality against f.
    // Both forms are canonical maps, so compare term by term.
    if (f.terms().size() != g.terms().size()) return std::nullopt;
    fp_t a = 0;
    bool ok = true;
    auto itf = f.terms().begin();
    auto itg = g.terms().begin();
    for (; ok && itf != f.terms().end(); ++itf, ++itg) {
      if (itf->first != itg->first) {
        ok = false;
        break;
      }
      fp_t gs = itg->second;
      for (std::size_t i = 0; i < m; ++i) {
        if (itg->first[i] != 0) {
          gs = fp_mul(gs, mod_pow(scales[i], itg->first[i], p), p);
        }
      }
      if (a == 0) {
        a = fp_mul(itf->second, fp_inv(gs, p), p);
      } else if (fp_mul(a, gs, p) != itf->second) {
        ok = false;
      }
    }
    if (ok && a != 0) return SimilarityWitness{a, scales};
  } while (next_scaling(scales, p.value()));
  return std::nullopt;
}

bool similar_up_to_permutation(const Form& f, const Form& g) {
  std::vector<std::size_t> perm(f.n_vars());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (are_similar(f, g.permuted(perm))) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace pform
