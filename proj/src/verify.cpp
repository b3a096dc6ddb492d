#include "pform/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <random>
#include <set>
#include <sstream>

namespace pform {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::confirmed: return "confirmed";
    case Verdict::refuted: return "refuted";
    case Verdict::exceptions_as_expected: return "exceptions-as-expected";
    case Verdict::unresolved: return "unresolved";
  }
  return "unknown";
}

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::uint64_t ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

void require_sweep_prime(const Prime& p) {
  if (p.value() >= 50) {
    throw std::invalid_argument("sweep tasks are bounded to primes < 50");
  }
}

// ---------------------------------------------------------------------------
// Fast evaluation kernel: precomputed monomial and gradient values on the
// canonical projective point list for a fixed monomial support.
// ---------------------------------------------------------------------------

struct SupportKernel {
  std::uint32_t p = 0;
  std::uint32_t inv_p32 = 0;   // p^{-1} mod 2^32 (odd p)
  std::uint32_t div_limit = 0; // floor((2^32-1)/p)
  std::size_t n_vars = 0;
  std::size_t t = 0;  // support size
  std::size_t n_points = 0;
  std::vector<std::uint16_t> val;   // [pt*t + i]
  std::vector<std::uint16_t> grad;  // [(pt*t + i)*n_vars + v]
  std::vector<std::vector<fp_t>> points;

  bool divides(std::uint32_t n) const {
    if (p == 2) return (n & 1) == 0;
    return n * inv_p32 <= div_limit;
  }
};

std::uint32_t odd_inverse_u32(std::uint32_t p) {
  std::uint32_t x = p;  // correct mod 2^3
  for (int i = 0; i < 4; ++i) x *= 2 - p * x;
  return x;
}

SupportKernel build_kernel(const Prime& prime, std::size_t n_vars,
                           const std::vector<Monomial>& support) {
  SupportKernel k;
  k.p = prime.value();
  k.inv_p32 = prime.value() == 2 ? 0 : odd_inverse_u32(k.p);
  k.div_limit = 0xFFFFFFFFu / k.p;
  k.n_vars = n_vars;
  k.t = support.size();
  auto pts = projective_points(prime, n_vars);
  k.n_points = pts.size();
  k.val.resize(k.n_points * k.t);
  k.grad.resize(k.n_points * k.t * n_vars);
  k.points.reserve(pts.size());
  for (std::size_t pi = 0; pi < pts.size(); ++pi) {
    const auto& c = pts[pi].coords;
    k.points.push_back(c);
    for (std::size_t i = 0; i < k.t; ++i) {
      const Monomial& m = support[i];
      std::uint64_t v = 1;
      for (std::size_t x = 0; x < n_vars; ++x) {
        v = (v * mod_pow(c[x], m[x], prime)) % k.p;
      }
      k.val[pi * k.t + i] = static_cast<std::uint16_t>(v);
      for (std::size_t d = 0; d < n_vars; ++d) {
        std::uint64_t g = 0;
        if (m[d] != 0) {
          g = m[d] % k.p;
          for (std::size_t x = 0; x < n_vars; ++x) {
            std::uint8_t e = m[x];
            if (x == d) e -= 1;
            g = (g * mod_pow(c[x], e, prime)) % k.p;
          }
        }
        k.grad[(pi * k.t + i) * n_vars + d] = static_cast<std::uint16_t>(g);
      }
    }
  }
  return k;
}

constexpr std::size_t kNoPoint = static_cast<std::size_t>(-1);

// First non-singular zero of sum coeffs[i] * support[i] in canonical
// point order, or kNoPoint.
std::size_t first_ns_zero(const SupportKernel& k, const std::uint32_t* coeffs) {
  const std::size_t t = k.t;
  const std::size_t nv = k.n_vars;
  for (std::size_t pt = 0; pt < k.n_points; ++pt) {
    const std::uint16_t* row = &k.val[pt * t];
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < t; ++i) s += coeffs[i] * row[i];
    if (!k.divides(s)) continue;
    const std::uint16_t* grow = &k.grad[pt * t * nv];
    for (std::size_t d = 0; d < nv; ++d) {
      std::uint32_t g = 0;
      for (std::size_t i = 0; i < t; ++i) g += coeffs[i] * grow[i * nv + d];
      if (!k.divides(g)) return pt;
    }
  }
  return kNoPoint;
}

Form support_form(const Prime& p, std::size_t n_vars, std::uint32_t degree,
                  const std::vector<Monomial>& support,
                  const std::uint32_t* coeffs) {
  Form f(p, n_vars, degree);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (coeffs[i] % p.value() != 0) f.add_term(support[i], coeffs[i]);
  }
  return f;
}

TaskReport finish_report(std::string task,
                         std::vector<std::pair<std::string, std::string>> params,
                         std::uint64_t examined,
                         std::vector<std::string> exceptions, Verdict verdict,
                         const Stopwatch& watch) {
  TaskReport r;
  r.task = std::move(task);
  r.params = std::move(params);
  r.forms_examined = examined;
  r.exceptions = std::move(exceptions);
  r.verdict = verdict;
  r.wall_ms = watch.ms();
  return r;
}

}  // namespace

std::string report_checksum(const TaskReport& report) {
  std::uint64_t h = 1469598103934665603ull;
  h = fnv1a(report.task, h);
  for (const auto& [k, v] : report.params) {
    h = fnv1a(k, h);
    h = fnv1a("=", h);
    h = fnv1a(v, h);
  }
  h = fnv1a("#" + std::to_string(report.forms_examined), h);
  for (const auto& e : report.exceptions) h = fnv1a("!" + e, h);
  h = fnv1a("@" + verdict_name(report.verdict), h);
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

// ---------------------------------------------------------------------------
// Lemma-style ternary cubic sweep: a*x^3 + b*x*y^2 + c*y^3 + (d*x+e*y)*z^2
// + f*z^3, acf != 0.
// ---------------------------------------------------------------------------

namespace {

const std::vector<Monomial> kClSupport = {
    {3, 0, 0}, {1, 2, 0}, {0, 3, 0}, {1, 0, 2}, {0, 1, 2}, {0, 0, 3}};

struct ClDecoded {
  std::uint32_t a, b, c, d, e, f;
};

ClDecoded cl_decode(const Prime& p, std::uint64_t index) {
  const std::uint64_t u = p.value() - 1;
  const std::uint64_t pv = p.value();
  ClDecoded out{};
  out.f = static_cast<std::uint32_t>(index % u) + 1;
  index /= u;
  out.e = static_cast<std::uint32_t>(index % pv);
  index /= pv;
  out.d = static_cast<std::uint32_t>(index % pv);
  index /= pv;
  out.c = static_cast<std::uint32_t>(index % u) + 1;
  index /= u;
  out.b = static_cast<std::uint32_t>(index % pv);
  index /= pv;
  out.a = static_cast<std::uint32_t>(index % u) + 1;
  return out;
}

class ClFamily : public SweepFamily {
public:
  explicit ClFamily(const Prime& p)
      : p_(p), kernel_(build_kernel(p, 3, kClSupport)) {}

  std::uint64_t size() const override { return cl_family_size(p_); }

  bool passes(std::uint64_t index) const override {
    ClDecoded v = cl_decode(p_, index);
    std::uint32_t coeffs[6] = {v.a, v.b, v.c, v.d, v.e, v.f};
    return first_ns_zero(kernel_, coeffs) != kNoPoint;
  }

  Form form_at(std::uint64_t index) const override {
    ClDecoded v = cl_decode(p_, index);
    std::uint32_t coeffs[6] = {v.a, v.b, v.c, v.d, v.e, v.f};
    return support_form(p_, 3, 3, kClSupport, coeffs);
  }

private:
  Prime p_;
  SupportKernel kernel_;
};

}  // namespace

std::uint64_t cl_family_size(const Prime& p) {
  const std::uint64_t u = p.value() - 1;
  const std::uint64_t pv = p.value();
  return u * pv * u * pv * pv * u;
}

Form cl_form_at(const Prime& p, std::uint64_t index) {
  return ClFamily(p).form_at(index);
}

bool cl_passes_fast(const Prime& p, std::uint64_t index) {
  return ClFamily(p).passes(index);
}

TaskReport task_cl(const Prime& p, const TaskOptions& options) {
  require_sweep_prime(p);
  if (p.value() == 3) {
    throw std::invalid_argument("task_cl: the claim excludes p = 3");
  }
  Stopwatch watch;
  ClFamily family(p);
  SweepOptions sw{options.workers, options.block_size, options.progress};
  SweepResult res = sweep(family, sw);
  std::vector<std::string> exceptions;
  exceptions.reserve(res.exceptions.size());
  for (auto idx : res.exceptions) exceptions.push_back(family.form_at(idx).to_string());
  Verdict verdict = exceptions.empty() ? Verdict::confirmed : Verdict::refuted;
  return finish_report("cl", {{"p", std::to_string(p.value())}}, res.examined,
                       std::move(exceptions), verdict, watch);
}

// ---------------------------------------------------------------------------
// Quintic shapes: two singular-unit-point coefficient patterns, swept over
// the torus-canonical slice (form scaled to A = 1, first nonzero
// quadratic-part coefficient scaled to the least member of its achievable
// coset).
// ---------------------------------------------------------------------------

namespace {

// Q multiplies xyz; positions x^2, xy, xz, y^2, yz, z^2.
const std::array<Monomial, 6> kQuinticQ = {
    Monomial{3, 1, 1}, Monomial{2, 2, 1}, Monomial{2, 1, 2},
    Monomial{1, 3, 1}, Monomial{1, 2, 2}, Monomial{1, 1, 3}};

std::vector<Monomial> quintic_support(int shape) {
  std::vector<Monomial> s = {{3, 2, 0}, {0, 3, 2}};
  s.push_back(shape == 0 ? Monomial{2, 0, 3} : Monomial{3, 0, 2});
  for (const auto& q : kQuinticQ) s.push_back(q);
  return s;
}

struct QuinticLayout {
  Prime p;
  std::vector<std::uint64_t> pows;    // p^0..p^5
  std::vector<std::uint32_t> canon4;  // canonical values for position 4
  std::uint64_t q_count = 0;          // canonical Q vectors incl. Q = 0
  std::uint64_t per_shape = 0;

  explicit QuinticLayout(const Prime& prime) : p(prime) {
    pows.resize(6);
    pows[0] = 1;
    for (int i = 1; i < 6; ++i) pows[i] = pows[i - 1] * p.value();
    canon4 = {1, least_nonresidue(p)};
    q_count = 1;  // Q = 0
    for (int j = 0; j < 6; ++j) {
      std::uint64_t block = (j == 4 ? 2 : 1) * pows[5 - j];
      q_count += block;
    }
    const std::uint64_t u = p.value() - 1;
    per_shape = u * u * q_count;
  }

  // Index -> (shape, B, C, q[6]).
  void decode(std::uint64_t index, int& shape, std::uint32_t& B,
              std::uint32_t& C, std::uint32_t q[6]) const {
    shape = index < per_shape ? 0 : 1;
    if (shape == 1) index -= per_shape;
    const std::uint64_t u = p.value() - 1;
    std::uint64_t qidx = index % q_count;
    index /= q_count;
    C = static_cast<std::uint32_t>(index % u) + 1;
    index /= u;
    B = static_cast<std::uint32_t>(index % u) + 1;
    for (int i = 0; i < 6; ++i) q[i] = 0;
    if (qidx == 0) return;
    qidx -= 1;
    for (int j = 0; j < 6; ++j) {
      std::uint64_t width = (j == 4 ? 2 : 1);
      std::uint64_t block = width * pows[5 - j];
      if (qidx >= block) {
        qidx -= block;
        continue;
      }
      q[j] = j == 4 ? canon4[qidx / pows[5 - j]] : 1;
      std::uint64_t rest = qidx % pows[5 - j];
      for (int i = 5; i > j; --i) {
        q[i] = static_cast<std::uint32_t>(rest % p.value());
        rest /= p.value();
      }
      return;
    }
    throw std::logic_error("QuinticLayout::decode: bad Q index");
  }
};

class QuinticFamily : public SweepFamily {
public:
  explicit QuinticFamily(const Prime& p)
      : layout_(p), kernels_{build_kernel(p, 3, quintic_support(0)),
                             build_kernel(p, 3, quintic_support(1))} {}

  std::uint64_t size() const override { return 2 * layout_.per_shape; }

  bool passes(std::uint64_t index) const override {
    int shape;
    std::uint32_t B, C, q[6];
    layout_.decode(index, shape, B, C, q);
    std::uint32_t coeffs[9] = {1, B, C, q[0], q[1], q[2], q[3], q[4], q[5]};
    return first_ns_zero(kernels_[shape], coeffs) != kNoPoint;
  }

  Form form_at(std::uint64_t index) const override {
    int shape;
    std::uint32_t B, C, q[6];
    layout_.decode(index, shape, B, C, q);
    std::uint32_t coeffs[9] = {1, B, C, q[0], q[1], q[2], q[3], q[4], q[5]};
    return support_form(layout_.p, 3, 5, quintic_support(shape), coeffs);
  }

  const QuinticLayout& layout() const { return layout_; }

private:
  QuinticLayout layout_;
  std::array<SupportKernel, 2> kernels_;
};

// Coefficient tuple (A, B, C, q0..q5) of a shape form; tuples compare
// lexicographically with the shape id in front.
struct QuinticTuple {
  int shape = 0;
  std::array<std::uint32_t, 9> c{};

  bool operator<(const QuinticTuple& o) const {
    if (shape != o.shape) return shape < o.shape;
    return c < o.c;
  }
  bool operator==(const QuinticTuple& o) const {
    return shape == o.shape && c == o.c;
  }
};

// Exponent vectors of the nine support monomials per shape.
std::array<std::array<int, 3>, 9> quintic_exponents(int shape) {
  std::array<std::array<int, 3>, 9> e{};
  e[0] = {3, 2, 0};
  e[1] = {0, 3, 2};
  e[2] = shape == 0 ? std::array<int, 3>{2, 0, 3} : std::array<int, 3>{3, 0, 2};
  for (int j = 0; j < 6; ++j) {
    e[3 + j] = {int(kQuinticQ[j][0]), int(kQuinticQ[j][1]), int(kQuinticQ[j][2])};
  }
  return e;
}

// Applies the torus element (lambda, a, b, c) with lambda chosen so the
// leading coefficient becomes 1, for every (a, b, c); also folds in the
// cyclic variable rotation symmetry of shape 0. Returns the least tuple
// in the full orbit.
QuinticTuple quintic_orbit_min(const Prime& p, const QuinticTuple& t) {
  // Variable rotations that preserve the support. Shape 0 ({x^3y^2,
  // y^3z^2, z^3x^2}) is invariant under x->y->z->x; shape 1 has no
  // nontrivial support-preserving permutation.
  std::vector<QuinticTuple> rotations = {t};
  if (t.shape == 0) {
    // Rotation sigma: x->y->z->x maps coefficient slots (A,B,C) ->
    // (C,A,B) and Q slots (x2,xy,xz,y2,yz,z2) -> images under sigma.
    static const int qperm[6] = {3, 4, 1, 5, 2, 0};  // slot i lands at qperm[i]
    QuinticTuple r = t;
    for (int rot = 0; rot < 2; ++rot) {
      QuinticTuple n;
      n.shape = 0;
      n.c[0] = r.c[2];
      n.c[1] = r.c[0];
      n.c[2] = r.c[1];
      for (int i = 0; i < 6; ++i) n.c[3 + qperm[i]] = r.c[3 + i];
      rotations.push_back(n);
      r = n;
    }
  }

  const std::uint32_t pv = p.value();
  QuinticTuple best;
  bool have = false;
  for (const auto& base : rotations) {
    auto expo = quintic_exponents(base.shape);
    for (std::uint32_t a = 1; a < pv; ++a) {
      for (std::uint32_t b = 1; b < pv; ++b) {
        // lambda * a^3 b^2 = 1 normalizes the leading slot.
        fp_t lead = fp_mul(mod_pow(a, 3, p), mod_pow(b, 2, p), p);
        fp_t lambda0 = fp_inv(fp_mul(base.c[0] % pv, lead, p), p);
        for (std::uint32_t c = 1; c < pv; ++c) {
          QuinticTuple n;
          n.shape = base.shape;
          for (int i = 0; i < 9; ++i) {
            fp_t s = fp_mul(lambda0,
                            fp_mul(mod_pow(a, expo[i][0], p),
                                   fp_mul(mod_pow(b, expo[i][1], p),
                                          mod_pow(c, expo[i][2], p), p), p), p);
            n.c[i] = fp_mul(base.c[i] % pv, s, p);
          }
          if (!have || n < best) {
            best = n;
            have = true;
          }
        }
      }
    }
  }
  return best;
}

Form quintic_tuple_form(const Prime& p, const QuinticTuple& t) {
  return support_form(p, 3, 5, quintic_support(t.shape), t.c.data());
}

}  // namespace

std::uint64_t quintic_family_size(const Prime& p) {
  return 2 * QuinticLayout(p).per_shape;
}

Form quintic_form_at(const Prime& p, std::uint64_t index) {
  return QuinticFamily(p).form_at(index);
}

bool quintic_passes_fast(const Prime& p, std::uint64_t index) {
  return QuinticFamily(p).passes(index);
}

bool quintic_passes_generic(const Prime& p, std::uint64_t index) {
  return has_nonsingular_zero(quintic_form_at(p, index));
}

Form quintic_known_exception_p13() {
  return parse_form(
      "x^3*y^2 + 3*y^3*z^2 + 6*x^3*z^2 + 11*x^3*y*z + x^2*y^2*z + x^2*y*z^2 + "
      "6*x*y^3*z + x*y^2*z^2 + 4*x*y*z^3 mod 13");
}

TaskReport task_quintic(const Prime& p, const TaskOptions& options) {
  require_sweep_prime(p);
  if (p.value() < 13 || p.value() >= 47) {
    throw std::invalid_argument("task_quintic: prime must satisfy 13 <= p < 47");
  }
  Stopwatch watch;
  QuinticFamily family(p);
  SweepOptions sw{options.workers, options.block_size, options.progress};
  SweepResult res = sweep(family, sw);

  // Deduplicate exceptions by the residual symmetry: minimize over the
  // full scaling torus and the support-preserving rotations.
  std::set<QuinticTuple> orbit_reps;
  for (auto idx : res.exceptions) {
    int shape;
    std::uint32_t B, C, q[6];
    family.layout().decode(idx, shape, B, C, q);
    QuinticTuple t{shape, {1, B, C, q[0], q[1], q[2], q[3], q[4], q[5]}};
    orbit_reps.insert(quintic_orbit_min(p, t));
  }
  std::vector<std::string> exceptions;
  for (const auto& t : orbit_reps) {
    exceptions.push_back(quintic_tuple_form(p, t).to_string());
  }

  Verdict verdict;
  if (p.value() == 13) {
    // The published exceptional form: shape 1, A=1, B=3, C=6,
    // Q = 11x^2 + xy + xz + 6y^2 + yz + 4z^2.
    QuinticTuple published{1, {1, 3, 6, 11, 1, 1, 6, 1, 4}};
    bool member = orbit_reps.count(quintic_orbit_min(p, published)) > 0;
    if (member) {
      exceptions.push_back(quintic_tuple_form(p, published).to_string());
      verdict = Verdict::exceptions_as_expected;
    } else {
      verdict = Verdict::refuted;
    }
  } else {
    verdict = exceptions.empty() ? Verdict::confirmed : Verdict::unresolved;
  }

  return finish_report("quintic", {{"p", std::to_string(p.value())}},
                       res.examined, std::move(exceptions), verdict, watch);
}

// ---------------------------------------------------------------------------
// p = 5 quartic sweeps
// ---------------------------------------------------------------------------

namespace {

const std::vector<Monomial> kMykey51Support = {
    {4, 0, 0}, {1, 3, 0}, {0, 4, 0}, {1, 0, 3}, {0, 1, 3}, {0, 0, 4}};

struct Mykey51Decoded {
  std::uint32_t A, B, C, D, E, F;
};

Mykey51Decoded mykey51_decode(std::uint64_t index) {
  Mykey51Decoded v{};
  v.F = static_cast<std::uint32_t>(index % 4) + 1;
  index /= 4;
  v.E = static_cast<std::uint32_t>(index % 5);
  index /= 5;
  v.D = static_cast<std::uint32_t>(index % 5);
  index /= 5;
  v.C = static_cast<std::uint32_t>(index % 4) + 1;
  index /= 4;
  v.B = static_cast<std::uint32_t>(index % 5);
  index /= 5;
  v.A = static_cast<std::uint32_t>(index % 4) + 1;
  return v;
}

class Mykey51Family : public SweepFamily {
public:
  Mykey51Family() : p_(5), kernel_(build_kernel(p_, 3, kMykey51Support)) {}

  std::uint64_t size() const override { return 4ull * 5 * 4 * 5 * 5 * 4; }

  bool passes(std::uint64_t index) const override {
    Mykey51Decoded v = mykey51_decode(index);
    std::uint32_t coeffs[6] = {v.A, v.B, v.C, v.D, v.E, v.F};
    return first_ns_zero(kernel_, coeffs) != kNoPoint;
  }

  Form form_at(std::uint64_t index) const override {
    Mykey51Decoded v = mykey51_decode(index);
    std::uint32_t coeffs[6] = {v.A, v.B, v.C, v.D, v.E, v.F};
    return support_form(p_, 3, 4, kMykey51Support, coeffs);
  }

private:
  Prime p_;
  SupportKernel kernel_;
};

// The three exceptional families up to variable permutation, restricted
// to members of the swept coefficient shape.
std::set<std::string> mykey51_expected_exceptions() {
  Prime p(5);
  std::set<std::string> expected;
  std::vector<Form> seeds;
  for (std::int64_t c = 1; c <= 4; ++c) {
    {
      Form f(p, 3, 4);
      f.add_term({4, 0, 0}, c);
      f.add_term({0, 4, 0}, c);
      f.add_term({0, 0, 4}, c);
      seeds.push_back(f);
    }
    {
      Form f(p, 3, 4);
      f.add_term({4, 0, 0}, 2 * c);
      f.add_term({0, 4, 0}, c);
      f.add_term({0, 0, 4}, c);
      seeds.push_back(f);
    }
    for (std::int64_t d = 1; d <= 4; ++d) {
      Form f(p, 3, 4);
      f.add_term({4, 0, 0}, c);
      f.add_term({0, 4, 0}, c);
      f.add_term({1, 0, 3}, c * d % 5);
      f.add_term({0, 0, 4}, 3 * c);
      seeds.push_back(f);
    }
  }
  std::set<Monomial> allowed(kMykey51Support.begin(), kMykey51Support.end());
  std::vector<std::size_t> perm = {0, 1, 2};
  for (const auto& seed : seeds) {
    std::vector<std::size_t> q = perm;
    do {
      Form g = seed.permuted(q);
      bool fits = true;
      for (const auto& [m, c] : g.terms()) fits = fits && allowed.count(m) > 0;
      // Shape constraints: A, C, F nonzero.
      fits = fits && g.coefficient({4, 0, 0}) != 0 &&
             g.coefficient({0, 4, 0}) != 0 && g.coefficient({0, 0, 4}) != 0;
      if (fits) expected.insert(g.to_string());
    } while (std::next_permutation(q.begin(), q.end()));
  }
  return expected;
}

const std::vector<Monomial> kMykey52Support = {
    {4, 0, 0, 0}, {0, 4, 0, 0}, {0, 0, 4, 0},  // 2x^4 + y^4 + z^4
    {1, 1, 0, 2}, {1, 0, 1, 2}, {0, 1, 1, 2},  // (Axy + Bxz + Cyz) w^2
    {1, 0, 0, 3}, {0, 1, 0, 3}, {0, 0, 1, 3},  // (Dx + Ey + Fz) w^3
    {0, 0, 0, 4}};

class Mykey52Family : public SweepFamily {
public:
  Mykey52Family() : p_(5), kernel_(build_kernel(p_, 4, kMykey52Support)) {}

  std::uint64_t size() const override { return 15625ull * 4; }

  bool passes(std::uint64_t index) const override {
    std::uint32_t coeffs[10];
    decode(index, coeffs);
    return first_ns_zero(kernel_, coeffs) != kNoPoint;
  }

  Form form_at(std::uint64_t index) const override {
    std::uint32_t coeffs[10];
    decode(index, coeffs);
    return support_form(p_, 4, 4, kMykey52Support, coeffs);
  }

private:
  static void decode(std::uint64_t index, std::uint32_t* coeffs) {
    coeffs[0] = 2;
    coeffs[1] = 1;
    coeffs[2] = 1;
    coeffs[9] = static_cast<std::uint32_t>(index % 4) + 1;  // G
    index /= 4;
    for (int i = 8; i >= 3; --i) {
      coeffs[i] = static_cast<std::uint32_t>(index % 5);
      index /= 5;
    }
  }

  Prime p_;
  SupportKernel kernel_;
};

}  // namespace

Form mykey51_form_at(std::uint64_t index) { return Mykey51Family().form_at(index); }
bool mykey51_passes_fast(std::uint64_t index) { return Mykey51Family().passes(index); }
Form mykey52_form_at(std::uint64_t index) { return Mykey52Family().form_at(index); }
bool mykey52_passes_fast(std::uint64_t index) { return Mykey52Family().passes(index); }

TaskReport task_mykey51(const TaskOptions& options) {
  Stopwatch watch;
  Mykey51Family family;
  SweepOptions sw{options.workers, options.block_size, options.progress};
  SweepResult res = sweep(family, sw);
  std::vector<std::string> exceptions;
  for (auto idx : res.exceptions) exceptions.push_back(family.form_at(idx).to_string());

  std::set<std::string> found(exceptions.begin(), exceptions.end());
  Verdict verdict = found == mykey51_expected_exceptions() && !found.empty()
                        ? Verdict::exceptions_as_expected
                        : Verdict::refuted;
  return finish_report("mykey51", {{"p", "5"}}, res.examined,
                       std::move(exceptions), verdict, watch);
}

TaskReport task_mykey52(const TaskOptions& options) {
  Stopwatch watch;
  Mykey52Family family;
  SweepOptions sw{options.workers, options.block_size, options.progress};
  SweepResult res = sweep(family, sw);
  std::vector<std::string> exceptions;
  for (auto idx : res.exceptions) exceptions.push_back(family.form_at(idx).to_string());
  Verdict verdict = exceptions.empty() ? Verdict::confirmed : Verdict::refuted;
  return finish_report("mykey52", {{"p", "5"}}, res.examined,
                       std::move(exceptions), verdict, watch);
}

// ---------------------------------------------------------------------------
// Binary quartic + split quadratic search
// ---------------------------------------------------------------------------

namespace {

const std::vector<Monomial> kMykeySupport = {
    {4, 0, 0}, {1, 3, 0}, {0, 4, 0},             // A, B, C
    {2, 0, 2}, {1, 1, 2}, {0, 2, 2},             // D * (qa, qb, qc)
    {1, 0, 3}, {0, 1, 3}, {0, 0, 4}};            // E, F, G

struct SplitQuadratic {
  std::uint32_t a, b, c;
};

// Candidate split quadratics in the fixed canonical order: x(x - alpha y)
// for alpha = 1..p-1, then xy, then all remaining (a, b, c) in lex order
// with b^2 - 4ac a nonzero square.
std::vector<SplitQuadratic> split_quadratic_candidates(const Prime& p) {
  const std::uint32_t pv = p.value();
  std::vector<SplitQuadratic> out;
  std::set<std::array<std::uint32_t, 3>> seen;
  auto push = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (seen.insert({a, b, c}).second) out.push_back({a, b, c});
  };
  for (std::uint32_t alpha = 1; alpha < pv; ++alpha) {
    push(1, pv - alpha, 0);  // x^2 - alpha xy
  }
  push(0, 1, 0);  // xy
  for (std::uint32_t a = 0; a < pv; ++a) {
    for (std::uint32_t b = 0; b < pv; ++b) {
      for (std::uint32_t c = 0; c < pv; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        fp_t disc = fp_sub(fp_mul(b, b, p), fp_mul(4 % pv, fp_mul(a, c, p), p), p);
        if (disc != 0 && legendre_symbol(disc, p) == 1) push(a, b, c);
      }
    }
  }
  return out;
}

// Exceptional ternary class: x^4 - 4xy^3 + 3y^4 + 4H(x-y)y z^2 + 2H^2 z^4.
Form mykey_exceptional_form(const Prime& p, fp_t H) {
  Form f(p, 3, 4);
  f.add_term({4, 0, 0}, 1);
  f.add_term({1, 3, 0}, -4);
  f.add_term({0, 4, 0}, 3);
  f.add_term({1, 1, 2}, 4 * std::int64_t(H));
  f.add_term({0, 2, 2}, -4 * std::int64_t(H));
  f.add_term({0, 0, 4}, 2 * std::int64_t(H) * H);
  return f;
}

struct MykeyContext {
  Prime p;
  SupportKernel kernel;
  std::vector<SplitQuadratic> candidates;
  bool exceptional_primes_allowed;  // p = 5 or 7 mod 8
  bool diagonal_escape;             // p in {5, 13}

  explicit MykeyContext(const Prime& prime)
      : p(prime), kernel(build_kernel(prime, 3, kMykeySupport)),
        candidates(split_quadratic_candidates(prime)),
        exceptional_primes_allowed(prime.value() % 8 == 5 ||
                                   prime.value() % 8 == 7),
        diagonal_escape(prime.value() == 5 || prime.value() == 13) {}
};

// True when the failing extension is one of the excused classes.
bool mykey_escape(const MykeyContext& ctx, const std::uint32_t* coeffs) {
  const Prime& p = ctx.p;
  if (ctx.diagonal_escape) {
    bool diagonal = coeffs[1] % p.value() == 0 && coeffs[3] % p.value() == 0 &&
                    coeffs[4] % p.value() == 0 && coeffs[5] % p.value() == 0 &&
                    coeffs[6] % p.value() == 0 && coeffs[7] % p.value() == 0;
    if (diagonal) return true;
  }
  if (ctx.exceptional_primes_allowed) {
    Form g = support_form(p, 3, 4, kMykeySupport, coeffs);
    for (fp_t H = 1; H < p.value(); ++H) {
      if (are_similar(g, mykey_exceptional_form(p, H))) return true;
    }
  }
  return false;
}

// Whether q is acceptable for f = (A, B, C): every extension with G != 0
// has a non-singular zero or is excused.
bool mykey_q_acceptable(const MykeyContext& ctx, std::uint32_t A,
                        std::uint32_t B, std::uint32_t C,
                        const SplitQuadratic& q) {
  const std::uint32_t pv = ctx.p.value();
  std::uint32_t coeffs[9];
  coeffs[0] = A;
  coeffs[1] = B;
  coeffs[2] = C;
  for (std::uint32_t D = 0; D < pv; ++D) {
    coeffs[3] = D * q.a % pv;
    coeffs[4] = D * q.b % pv;
    coeffs[5] = D * q.c % pv;
    for (std::uint32_t E = 0; E < pv; ++E) {
      coeffs[6] = E;
      for (std::uint32_t F = 0; F < pv; ++F) {
        coeffs[7] = F;
        for (std::uint32_t G = 1; G < pv; ++G) {
          coeffs[8] = G;
          if (first_ns_zero(ctx.kernel, coeffs) != kNoPoint) continue;
          if (!mykey_escape(ctx, coeffs)) return false;
        }
      }
    }
  }
  return true;
}

// First acceptable candidate index for f, or -1.
std::int64_t mykey_first_q(const MykeyContext& ctx, std::uint32_t A,
                           std::uint32_t B, std::uint32_t C) {
  // A non-singular binary zero of f handles every extension at z = 0,
  // so the first candidate is acceptable outright.
  const Prime& p = ctx.p;
  Form f(p, 2, 4);
  f.add_term({4, 0}, A);
  f.add_term({1, 3}, B);
  f.add_term({0, 4}, C);
  if (has_nonsingular_zero(f)) return 0;

  for (std::size_t qi = 0; qi < ctx.candidates.size(); ++qi) {
    if (mykey_q_acceptable(ctx, A, B, C, ctx.candidates[qi])) {
      return static_cast<std::int64_t>(qi);
    }
  }
  return -1;
}

class MykeyCase1Family : public SweepFamily {
public:
  explicit MykeyCase1Family(const Prime& p)
      : ctx_(p), choices_(size(), UINT32_MAX) {}

  std::uint64_t size() const override {
    const std::uint64_t u = ctx_.p.value() - 1;
    return u * ctx_.p.value() * u;
  }

  bool passes(std::uint64_t index) const override {
    auto [A, B, C] = decode(index);
    std::int64_t qi = mykey_first_q(ctx_, A, B, C);
    if (qi < 0) return false;
    choices_[index] = static_cast<std::uint32_t>(qi);
    return true;
  }

  Form form_at(std::uint64_t index) const override {
    auto [A, B, C] = decode(index);
    Form f(ctx_.p, 2, 4);
    f.add_term({4, 0}, A);
    f.add_term({1, 3}, B);
    f.add_term({0, 4}, C);
    return f;
  }

  std::array<std::uint32_t, 3> decode(std::uint64_t index) const {
    const std::uint64_t u = ctx_.p.value() - 1;
    std::uint32_t C = static_cast<std::uint32_t>(index % u) + 1;
    index /= u;
    std::uint32_t B = static_cast<std::uint32_t>(index % ctx_.p.value());
    index /= ctx_.p.value();
    std::uint32_t A = static_cast<std::uint32_t>(index % u) + 1;
    return {A, B, C};
  }

  const MykeyContext& context() const { return ctx_; }
  std::vector<std::uint32_t> take_choices() { return std::move(choices_); }

private:
  MykeyContext ctx_;
  mutable std::vector<std::uint32_t> choices_;
};

}  // namespace

std::int64_t mykey_case1_first_q_generic(const Prime& p,
                                          std::uint64_t index) {
  MykeyCase1Family family(p);
  auto [A, B, C] = family.decode(index);
  const MykeyContext& ctx = family.context();
  const std::uint32_t pv = p.value();
  for (std::size_t qi = 0; qi < ctx.candidates.size(); ++qi) {
    const SplitQuadratic& q = ctx.candidates[qi];
    bool acceptable = true;
    for (std::uint32_t D = 0; D < pv && acceptable; ++D) {
      for (std::uint32_t E = 0; E < pv && acceptable; ++E) {
        for (std::uint32_t F = 0; F < pv && acceptable; ++F) {
          for (std::uint32_t G = 1; G < pv && acceptable; ++G) {
            std::uint32_t coeffs[9] = {A, B, C,
                                       D * q.a % pv, D * q.b % pv, D * q.c % pv,
                                       E, F, G};
            Form g = support_form(p, 3, 4, kMykeySupport, coeffs);
            if (has_nonsingular_zero(g)) continue;
            if (!mykey_escape(ctx, coeffs)) acceptable = false;
          }
        }
      }
    }
    if (acceptable) return static_cast<std::int64_t>(qi);
  }
  return -1;
}

MykeyCase1Result task_mykey_case1(const Prime& p, const TaskOptions& options) {
  static const std::set<std::uint32_t> supported = {3, 7, 11, 17, 19, 23, 31};
  if (!supported.count(p.value())) {
    throw std::invalid_argument(
        "task_mykey_case1: supported primes are 3, 7, 11, 17, 19, 23, 31");
  }
  Stopwatch watch;
  MykeyCase1Family family(p);
  SweepOptions sw{options.workers, options.block_size, options.progress};
  SweepResult res = sweep(family, sw);

  std::vector<std::string> exceptions;
  for (auto idx : res.exceptions) exceptions.push_back(family.form_at(idx).to_string());
  Verdict verdict = exceptions.empty() ? Verdict::confirmed : Verdict::refuted;

  MykeyCase1Result out;
  out.report = finish_report("mykey-case1", {{"p", std::to_string(p.value())}},
                             res.examined, std::move(exceptions), verdict, watch);
  out.q_choice = family.take_choices();
  for (const auto& q : family.context().candidates) {
    Form qf(p, 2, 2);
    qf.add_term({2, 0}, q.a);
    qf.add_term({1, 1}, q.b);
    qf.add_term({0, 2}, q.c);
    out.q_literals.push_back(qf.to_string());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Remaining tasks
// ---------------------------------------------------------------------------

TaskReport task_identities() {
  Stopwatch watch;
  bool ok = true;

  {
    Prime p(13);
    Form diag(p, 3, 4);
    diag.add_term({4, 0, 0}, 1);
    diag.add_term({0, 4, 0}, 1);
    diag.add_term({0, 0, 4}, 2);
    LinearSubstitution s{p, 3, 2, {1, 1, 2, 1, 1, 2}};
    Form expect = parse_form("6*x^4 + 11*x*y^3 + 8*y^4 mod 13");
    ok = ok && diag.substituted(s) == expect;
    ok = ok && !are_similar(expect, parse_form("x^4 - 4*x*y^3 + 3*y^4 mod 13"));
  }
  {
    Prime p(29);
    Form diag(p, 3, 4);
    diag.add_term({4, 0, 0}, 1);
    diag.add_term({0, 4, 0}, 1);
    diag.add_term({0, 0, 4}, 1);
    LinearSubstitution s{p, 3, 2, {1, 1, 6, 26, 1, 9}};
    Form expect = parse_form("22*x^4 + 10*x*y^3 + 2*y^4 mod 29");
    ok = ok && diag.substituted(s) == expect;
    ok = ok && !are_similar(expect, parse_form("x^4 - 4*x*y^3 + 3*y^4 mod 29"));
  }

  return finish_report("identities", {}, 4, {},
                       ok ? Verdict::confirmed : Verdict::refuted, watch);
}

namespace {

const std::vector<Monomial> kDiagonalQuarticSupport = {
    {4, 0, 0}, {0, 4, 0}, {0, 0, 4}};

class BadformFamily : public SweepFamily {
public:
  explicit BadformFamily(const Prime& p)
      : p_(p), kernel_(build_kernel(p, 3, kDiagonalQuarticSupport)) {}

  std::uint64_t size() const override {
    const std::uint64_t u = p_.value() - 1;
    return u * u * u;
  }

  bool passes(std::uint64_t index) const override {
    std::uint32_t coeffs[3];
    decode(index, coeffs);
    return first_ns_zero(kernel_, coeffs) != kNoPoint;
  }

  Form form_at(std::uint64_t index) const override {
    std::uint32_t coeffs[3];
    decode(index, coeffs);
    return support_form(p_, 3, 4, kDiagonalQuarticSupport, coeffs);
  }

private:
  void decode(std::uint64_t index, std::uint32_t* coeffs) const {
    const std::uint64_t u = p_.value() - 1;
    coeffs[2] = static_cast<std::uint32_t>(index % u) + 1;
    index /= u;
    coeffs[1] = static_cast<std::uint32_t>(index % u) + 1;
    index /= u;
    coeffs[0] = static_cast<std::uint32_t>(index % u) + 1;
  }

  Prime p_;
  SupportKernel kernel_;
};

}  // namespace

TaskReport task_badform_exceptions(const Prime& p, const TaskOptions& options) {
  if (p.value() != 13 && p.value() != 29) {
    throw std::invalid_argument("task_badform_exceptions: p must be 13 or 29");
  }
  Stopwatch watch;
  BadformFamily family(p);
  SweepOptions sw{options.workers, options.block_size, options.progress};
  SweepResult res = sweep(family, sw);

  Form target(p, 3, 4);
  target.add_term({4, 0, 0}, 1);
  target.add_term({0, 4, 0}, 1);
  target.add_term({0, 0, 4}, p.value() == 13 ? 2 : 1);

  std::vector<std::string> exceptions;
  bool all_match = !res.exceptions.empty();
  for (auto idx : res.exceptions) {
    Form f = family.form_at(idx);
    all_match = all_match && similar_up_to_permutation(f, target);
    exceptions.push_back(f.to_string());
  }
  Verdict verdict = all_match ? Verdict::exceptions_as_expected : Verdict::refuted;
  return finish_report("badform", {{"p", std::to_string(p.value())}},
                       res.examined, std::move(exceptions), verdict, watch);
}

TaskReport task_bad_family(const Prime& p, std::size_t n) {
  if (!p.is_odd()) throw std::invalid_argument("task_bad_family: p must be odd");
  if (n < 2 || n > 5) throw std::invalid_argument("task_bad_family: 2 <= n <= 5");
  require_sweep_prime(p);
  Stopwatch watch;

  fp_t nu = least_nonresidue(p);
  Form quad(p, n, 2);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Monomial m(n, 0);
    m[i] = 2;
    quad.add_term(m, 1);
  }
  Form f = quad * quad;
  Monomial last(n, 0);
  last[n - 1] = 4;
  f.add_term(last, -std::int64_t(nu));

  ZeroReport zr = count_and_witness(f);
  Verdict verdict = zr.nonsingular_witness ? Verdict::refuted : Verdict::confirmed;
  std::vector<std::string> exceptions;
  if (zr.nonsingular_witness) exceptions.push_back(f.to_string());
  return finish_report(
      "bad-family",
      {{"p", std::to_string(p.value())}, {"n", std::to_string(n)}}, 1,
      std::move(exceptions), verdict, watch);
}

TaskReport task_beta_counterexample_search(std::uint32_t r, const Prime& p,
                                           std::size_t n,
                                           std::uint64_t budget) {
  if (r < 1 || r > 3) {
    throw std::invalid_argument("task_beta_counterexample_search: r <= 3");
  }
  if (n > 4 * std::size_t(r) + 2) {
    throw std::invalid_argument("task_beta_counterexample_search: n <= 4r + 2");
  }
  require_sweep_prime(p);
  Stopwatch watch;

  // Deterministic seed from the parameters; reports must be reproducible.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (std::uint64_t(r) << 48) ^
                      (std::uint64_t(p.value()) << 32) ^
                      (std::uint64_t(n) << 16) ^ budget);
  const std::uint64_t pk = p.value() * std::uint64_t(p.value());  // mod p^2
  std::vector<std::string> candidates;

  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    // Sample r quadratics as upper-triangular coefficient matrices mod p^2.
    std::vector<std::vector<std::uint64_t>> forms(r);
    for (auto& coeffs : forms) {
      coeffs.resize(n * (n + 1) / 2);
      for (auto& c : coeffs) c = rng() % pk;
    }
    auto value = [&](const std::vector<std::uint64_t>& coeffs,
                     const std::vector<std::uint64_t>& x) {
      std::uint64_t acc = 0;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          acc = (acc + coeffs[idx++] * ((x[i] * x[j]) % pk)) % pk;
        }
      }
      return acc;
    };

    // Probe for a primitive common zero mod p^2.
    bool zero_found = false;
    std::vector<std::uint64_t> x(n);
    for (std::uint64_t probe = 0; probe < 20000 && !zero_found; ++probe) {
      bool primitive = false;
      for (auto& xi : x) {
        xi = rng() % pk;
        primitive = primitive || xi % p.value() != 0;
      }
      if (!primitive) continue;
      bool all_zero = true;
      for (std::uint32_t fi = 0; fi < r && all_zero; ++fi) {
        all_zero = value(forms[fi], x) == 0;
      }
      zero_found = all_zero;
    }
    if (!zero_found) {
      std::ostringstream os;
      os << "system r=" << r << " trial=" << trial << " coeffs=";
      for (const auto& coeffs : forms) {
        os << "[";
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
          if (i) os << ",";
          os << coeffs[i];
        }
        os << "]";
      }
      candidates.push_back(os.str());
    }
  }

  Verdict verdict = candidates.empty() ? Verdict::confirmed : Verdict::unresolved;
  return finish_report("beta-search",
                       {{"r", std::to_string(r)},
                        {"p", std::to_string(p.value())},
                        {"n", std::to_string(n)},
                        {"budget", std::to_string(budget)}},
                       budget, std::move(candidates), verdict, watch);
}

}  // namespace pform
