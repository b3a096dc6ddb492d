#include "pform/diagonal.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <sstream>

#include "pform/bounds.hpp"

namespace pform {

DiagonalForm::DiagonalForm(const Prime& p, std::uint32_t degree,
                           std::vector<DiagonalCoefficient> coeffs,
                           std::uint32_t precision)
    : prime_(p), degree_(degree),
      precision_(precision == 0 ? default_precision(p) : precision),
      coeffs_(std::move(coeffs)) {
  if (degree_ < 2) throw std::invalid_argument("DiagonalForm: degree >= 2");
  if (coeffs_.empty()) throw std::invalid_argument("DiagonalForm: no coefficients");
  const std::uint64_t modulus = pow_u64(p.value(), precision_);
  for (auto& c : coeffs_) {
    if (c.exponent >= degree_) {
      throw std::invalid_argument("DiagonalForm: exponent not normalized");
    }
    c.unit %= modulus;
    if (c.unit % p.value() == 0) {
      throw std::invalid_argument("DiagonalForm: unit part is not a unit");
    }
  }
}

DiagonalForm DiagonalForm::from_integers(const Prime& p, std::uint32_t degree,
                                         const std::vector<std::int64_t>& coeffs,
                                         std::uint32_t precision) {
  std::uint32_t prec = precision == 0 ? default_precision(p) : precision;
  const std::int64_t modulus = static_cast<std::int64_t>(pow_u64(p.value(), prec));
  std::vector<DiagonalCoefficient> out;
  out.reserve(coeffs.size());
  for (std::int64_t c : coeffs) {
    if (c == 0) throw std::invalid_argument("DiagonalForm: zero coefficient");
    std::uint32_t e = 0;
    while (c % p.value() == 0) {
      c /= p.value();
      ++e;
    }
    std::int64_t u = c % modulus;
    if (u < 0) u += modulus;
    out.push_back({e % degree, static_cast<std::uint64_t>(u)});
  }
  return DiagonalForm(p, degree, std::move(out), prec);
}

PadicInt DiagonalForm::coefficient_value(std::size_t i,
                                         std::uint32_t precision) const {
  PadicInt u = PadicInt::from_residue(prime_, precision, coeffs_[i].unit);
  PadicInt pe(prime_, precision,
              static_cast<std::int64_t>(pow_u64(prime_.value(), coeffs_[i].exponent)));
  return u * pe;
}

PadicInt DiagonalForm::evaluate(const std::vector<PadicInt>& x) const {
  if (x.size() != coeffs_.size()) {
    throw std::invalid_argument("DiagonalForm::evaluate: dimension mismatch");
  }
  std::uint32_t prec = precision_;
  for (const auto& xi : x) prec = std::min(prec, xi.precision());
  PadicInt acc(prime_, prec, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc = acc + coefficient_value(i, prec) * x[i].with_precision(prec).pow(degree_);
  }
  return acc;
}

std::string DiagonalForm::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << " + ";
    std::uint64_t c = coeffs_[i].unit;
    os << c;
    if (coeffs_[i].exponent > 0) {
      os << "*" << prime_.value();
      if (coeffs_[i].exponent > 1) os << "^" << coeffs_[i].exponent;
    }
    os << "*x" << (i + 1) << "^" << degree_;
  }
  os << " over Q_" << prime_.value();
  return os.str();
}

LevelProfile LevelProfile::of(const DiagonalForm& f) {
  LevelProfile profile{std::vector<std::uint32_t>(f.degree(), 0)};
  for (const auto& c : f.coefficients()) profile.counts[c.exponent] += 1;
  return profile;
}

namespace {

std::uint32_t valuation_of_u32(std::uint32_t n, std::uint32_t p) {
  std::uint32_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Hensel threshold for anchoring at a valuation-0 coefficient.
std::uint32_t oracle_modulus_exponent(const Prime& p, std::uint32_t d) {
  return 2 * valuation_of_u32(d, p.value()) + 1;
}

struct ShiftedVariable {
  std::uint32_t exponent;  // (e + s) mod d
  bool doubled;            // e + s >= d: witness coordinate carries 1/p
  std::uint64_t unit;
};

// Per-variable achievable values mod p^K, with a sample x realizing each,
// split into all x and unit x.
struct ValueSet {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> all;    // (value, x)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> units;  // (value, x)
};

ValueSet variable_values(const ShiftedVariable& var, std::uint32_t d,
                         std::uint32_t pK, std::uint32_t p) {
  ValueSet vs;
  std::vector<std::int32_t> seen_all(pK, -1), seen_unit(pK, -1);
  std::uint64_t pe = 1;
  for (std::uint32_t i = 0; i < var.exponent; ++i) pe *= p;
  const std::uint64_t scale = (pe * (var.unit % pK)) % pK;
  for (std::uint32_t x = 0; x < pK; ++x) {
    std::uint64_t xd = 1;
    for (std::uint32_t i = 0; i < d; ++i) xd = (xd * x) % pK;
    std::uint32_t value = static_cast<std::uint32_t>((scale * xd) % pK);
    if (seen_all[value] < 0) {
      seen_all[value] = static_cast<std::int32_t>(x);
      vs.all.emplace_back(value, x);
    }
    if (x % p != 0 && seen_unit[value] < 0) {
      seen_unit[value] = static_cast<std::int32_t>(x);
      vs.units.emplace_back(value, x);
    }
  }
  return vs;
}

struct DpWitness {
  std::vector<std::uint32_t> x;  // residues mod p^K
  std::size_t anchor;            // coordinate carrying the unit anchor
};

// Subset-sum DP over Z_{p^K} x {flag}, where flag records that some
// anchor-eligible coordinate took a unit value. Returns a witness for
// reaching (0, true) if one exists.
std::optional<DpWitness> anchored_zero_sum(
    const std::vector<ValueSet>& values, const std::vector<bool>& anchor,
    std::uint32_t pK) {
  const std::size_t n = values.size();
  // layers[i]: reachable (sum, flag) before processing variable i.
  std::vector<std::vector<std::uint8_t>> layers(
      n + 1, std::vector<std::uint8_t>(2 * pK, 0));
  layers[0][0] = 1;  // (sum 0, flag false)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t s = 0; s < pK; ++s) {
      for (std::uint32_t fl = 0; fl < 2; ++fl) {
        if (!layers[i][2 * s + fl]) continue;
        for (const auto& [v, x] : values[i].all) {
          layers[i + 1][2 * ((s + v) % pK) + fl] = 1;
        }
        if (anchor[i]) {
          for (const auto& [v, x] : values[i].units) {
            layers[i + 1][2 * ((s + v) % pK) + 1] = 1;
          }
        }
      }
    }
  }
  if (!layers[n][2 * 0 + 1]) return std::nullopt;

  // Backtrack: find predecessors layer by layer.
  DpWitness w;
  w.x.assign(n, 0);
  w.anchor = n;
  std::uint32_t sum = 0;
  bool flag = true;
  for (std::size_t i = n; i-- > 0;) {
    bool matched = false;
    // Prefer keeping the flag (anchor assigned later), then the anchor
    // transition; the scan order makes the witness deterministic.
    for (const auto& [v, x] : values[i].all) {
      std::uint32_t prev = (sum + pK - v % pK) % pK;
      if (layers[i][2 * prev + (flag ? 1 : 0)]) {
        w.x[i] = x;
        sum = prev;
        matched = true;
        break;
      }
    }
    if (!matched && flag && anchor[i]) {
      for (const auto& [v, x] : values[i].units) {
        std::uint32_t prev = (sum + pK - v % pK) % pK;
        if (layers[i][2 * prev + 0]) {
          w.x[i] = x;
          w.anchor = i;
          sum = prev;
          flag = false;
          matched = true;
          break;
        }
      }
    }
    if (!matched) throw std::logic_error("anchored_zero_sum: backtrack failed");
  }
  if (flag || w.anchor == n) {
    throw std::logic_error("anchored_zero_sum: no anchor on witness path");
  }
  return w;
}

}  // namespace

OracleResult is_solvable_oracle(const DiagonalForm& f) {
  const Prime& p = f.prime();
  const std::uint32_t d = f.degree();
  if (d < 2 || d > 4) {
    throw std::invalid_argument("is_solvable_oracle: degree must be 2, 3 or 4");
  }
  if (f.n_vars() > 24) {
    throw std::invalid_argument("is_solvable_oracle: at most 24 variables");
  }
  if (p.value() >= 50) {
    throw std::invalid_argument("is_solvable_oracle: prime must be < 50");
  }

  const std::uint32_t K = oracle_modulus_exponent(p, d);
  const std::uint32_t pK = static_cast<std::uint32_t>(pow_u64(p.value(), K));
  const std::size_t n = f.n_vars();

  // Internal precision: enough slack to return a witness at the form's
  // working precision after undoing the twist and renormalizing.
  const std::uint32_t internal = f.precision() + d - 1;

  for (std::uint32_t s = 0; s < d; ++s) {
    std::vector<ShiftedVariable> shifted(n);
    std::vector<bool> anchor(n, false);
    bool any_anchor = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t e = f.coefficients()[i].exponent + s;
      shifted[i].doubled = e >= d;
      shifted[i].exponent = e % d;
      shifted[i].unit = f.coefficients()[i].unit;
      anchor[i] = shifted[i].exponent == 0;
      any_anchor = any_anchor || anchor[i];
    }
    if (!any_anchor) continue;

    std::vector<ValueSet> values(n);
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = variable_values(shifted[i], d, pK, p.value());
    }
    auto witness = anchored_zero_sum(values, anchor, pK);
    if (!witness) continue;

    // Lift the anchor coordinate by univariate Newton at full internal
    // precision; the other coordinates stay at their integer samples.
    PadicInt rest(p, internal, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == witness->anchor) continue;
      PadicInt xi(p, internal, witness->x[i]);
      PadicInt ci = PadicInt::from_residue(p, internal, shifted[i].unit) *
                    PadicInt(p, internal,
                             static_cast<std::int64_t>(
                                 pow_u64(p.value(), shifted[i].exponent)));
      rest = rest + ci * xi.pow(d);
    }
    UnivariatePadicPoly g{p, internal, {}};
    g.coefficients.assign(d + 1, PadicInt(p, internal, 0));
    g.coefficients[0] = rest;
    g.coefficients[d] = PadicInt::from_residue(p, internal,
                                               f.coefficients()[witness->anchor].unit);
    PadicInt x0(p, internal, witness->x[witness->anchor]);
    LiftCertificate cert = hensel_lift_root(g, x0);

    // Undo the twist: shifted variable i (coefficient multiplied by p^s,
    // exponent reduced by d when it overflowed) represents p^{-doubled}
    // times the original coordinate. Scale the whole vector by p once to
    // clear that, then renormalize to a primitive vector.
    std::vector<PadicInt> x(n, PadicInt(p, internal, 0));
    for (std::size_t i = 0; i < n; ++i) {
      PadicInt yi = (i == witness->anchor)
                        ? cert.root
                        : PadicInt(p, internal, witness->x[i]);
      std::uint32_t scale_exp = shifted[i].doubled ? 0u : 1u;
      x[i] = yi * PadicInt(p, internal,
                           static_cast<std::int64_t>(pow_u64(p.value(), scale_exp)));
    }
    std::uint32_t min_v = internal;
    for (const auto& xi : x) {
      auto v = xi.valuation();
      min_v = std::min(min_v, v ? *v : internal);
    }
    std::vector<PadicInt> primitive;
    primitive.reserve(n);
    for (const auto& xi : x) {
      primitive.push_back(xi.shift_down(min_v).with_precision(f.precision()));
    }
    PadicInt residual = f.evaluate(primitive);
    if (!residual.is_zero()) {
      throw std::logic_error("is_solvable_oracle: witness failed verification");
    }
    return OracleResult{true, primitive};
  }
  return OracleResult{false, {}};
}

// ---------------------------------------------------------------------------
// Constructive 2-adic quartic solver
// ---------------------------------------------------------------------------

namespace {

struct SolverNode {
  std::uint32_t level = 0;    // valuation in [0, 4)
  std::uint64_t unit = 1;     // odd residue at solver precision
  std::uint32_t halvings = 0; // times the represented variable was doubled
  bool merged = false;
  std::size_t left = 0, right = 0;   // children when merged
  std::size_t leaf_index = 0;        // original variable when a leaf
};

struct SolverState {
  std::vector<SolverNode> nodes;   // all nodes ever created
  std::vector<std::size_t> live;   // indices of active nodes
};

constexpr std::uint32_t kSolverPrecision = 40;

// Assigns value t (at solver precision) to node `id`, distributing it to
// the original variables underneath. Halved nodes pass t/2 downward via
// an extra halving count resolved by a global scaling at the end.
void assign_node(const SolverState& st, std::size_t id, PadicInt t,
                 std::uint32_t halvings,
                 std::vector<std::pair<PadicInt, std::uint32_t>>& leaf_values) {
  const SolverNode& node = st.nodes[id];
  halvings += node.halvings;
  if (!node.merged) {
    leaf_values[node.leaf_index] = {t, halvings};
    return;
  }
  assign_node(st, node.left, t, halvings, leaf_values);
  assign_node(st, node.right, t, halvings, leaf_values);
}

struct Transversal {
  std::uint32_t shift = 0;
  std::array<std::size_t, 5> nodes{};  // two of twisted level 0, then 1,2,3
};

std::optional<Transversal> find_transversal(const SolverState& st) {
  for (std::uint32_t s = 0; s < 4; ++s) {
    std::array<std::vector<std::size_t>, 4> buckets;
    for (std::size_t id : st.live) {
      buckets[(st.nodes[id].level + s) % 4].push_back(id);
    }
    if (buckets[0].size() >= 2 && !buckets[1].empty() && !buckets[2].empty() &&
        !buckets[3].empty()) {
      return Transversal{s,
                         {buckets[0][0], buckets[0][1], buckets[1][0],
                          buckets[2][0], buckets[3][0]}};
    }
  }
  return std::nullopt;
}

// Digit construction on coefficients of exact valuations 0,0,1,2,3 in the
// 2^shift-twisted form. Produces values for the five chosen nodes.
std::array<PadicInt, 5> construct_from_transversal(const SolverState& st,
                                                   const Transversal& tv) {
  Prime two(2);
  const std::uint32_t P = kSolverPrecision;

  // Effective twisted coefficients c_i = 2^{(level+s) mod 4} * unit; a
  // wrapped exponent contributes one halving, handled by the caller via
  // node bookkeeping? No: the wrap belongs to this construction, so fold
  // it into the assigned values below.
  std::array<PadicInt, 5> coeff = {PadicInt(two, P, 0), PadicInt(two, P, 0),
                                   PadicInt(two, P, 0), PadicInt(two, P, 0),
                                   PadicInt(two, P, 0)};
  std::array<std::uint32_t, 5> wrap{};
  for (std::size_t k = 0; k < 5; ++k) {
    const SolverNode& node = st.nodes[tv.nodes[k]];
    std::uint32_t e = node.level + tv.shift;
    wrap[k] = e >= 4 ? 1 : 0;
    coeff[k] = PadicInt::from_residue(two, P, node.unit) *
               PadicInt(two, P, std::int64_t(1) << (e % 4));
  }

  // Normalize the first unit coefficient to 1.
  PadicInt inv = coeff[0].inverse();
  std::array<PadicInt, 5> d = coeff;
  for (auto& c : d) c = c * inv;

  // x2 = 1; choose x3, x4, x5 in {0,1} so the running sum gains a digit
  // each time; any odd x1 has x1^4 = 1 mod 16, so target the sum 1 + ...
  PadicInt sum = PadicInt(two, P, 1) + d[1];
  std::array<PadicInt, 5> x = {PadicInt(two, P, 0), PadicInt(two, P, 1),
                               PadicInt(two, P, 0), PadicInt(two, P, 0),
                               PadicInt(two, P, 0)};
  for (std::size_t k = 2; k < 5; ++k) {
    std::uint64_t need = std::uint64_t(1) << k;  // divisibility 4, 8, 16
    if (sum.residue() % need != 0) {
      x[k] = PadicInt(two, P, 1);
      sum = sum + d[k];
    }
    if (sum.residue() % need != 0) {
      throw std::logic_error("solver digit construction: level structure broken");
    }
  }
  PadicInt a = -(sum - PadicInt(two, P, 1));
  if (a.residue() % 16 != 1) {
    throw std::logic_error("solver digit construction: A != 1 mod 16");
  }
  x[0] = fourth_root_2adic(a);
  // A wrapped exponent e+s-4 stands for the original 2^{e+s} with the
  // variable halved once; the caller folds that into the leaf halvings.
  (void)wrap;
  return x;
}

}  // namespace

SolveOutcome solve_2adic_diagonal_quartic(const DiagonalForm& f,
                                          unsigned max_sequences) {
  if (f.prime().value() != 2 || f.degree() != 4) {
    throw std::invalid_argument("solve_2adic_diagonal_quartic: need a 2-adic quartic");
  }
  Prime two(2);
  const std::uint32_t P = kSolverPrecision;
  const std::uint64_t modulus = pow_u64(2, P);

  SolverState root;
  for (std::size_t i = 0; i < f.n_vars(); ++i) {
    SolverNode node;
    node.level = f.coefficients()[i].exponent;
    node.unit = f.coefficients()[i].unit % modulus;
    node.leaf_index = i;
    root.nodes.push_back(node);
    root.live.push_back(i);
  }

  unsigned sequences = 0;
  SolveOutcome outcome;

  // Depth-first search over merge sequences.
  std::function<bool(SolverState&)> dfs = [&](SolverState& st) -> bool {
    if (sequences >= max_sequences) return false;

    if (auto tv = find_transversal(st)) {
      ++sequences;
      auto values = construct_from_transversal(st, *tv);

      std::vector<std::pair<PadicInt, std::uint32_t>> leaf_values(
          f.n_vars(), {PadicInt(two, P, 0), 0});
      for (std::size_t k = 0; k < 5; ++k) {
        const SolverNode& node = st.nodes[tv->nodes[k]];
        std::uint32_t wrap = (node.level + tv->shift) >= 4 ? 1 : 0;
        assign_node(st, tv->nodes[k], values[k], wrap, leaf_values);
      }

      // Clear halvings by scaling the whole vector by 2^max_halving.
      std::uint32_t max_h = 0;
      for (auto& [t, h] : leaf_values) max_h = std::max(max_h, h);
      std::vector<PadicInt> x;
      x.reserve(f.n_vars());
      for (auto& [t, h] : leaf_values) {
        x.push_back(t * PadicInt(two, P, std::int64_t(1) << (max_h - h)));
      }

      std::uint32_t min_v = P;
      for (const auto& xi : x) {
        auto v = xi.valuation();
        min_v = std::min(min_v, v ? *v : P);
      }
      std::vector<PadicInt> primitive;
      primitive.reserve(x.size());
      for (const auto& xi : x) {
        primitive.push_back(xi.shift_down(min_v).with_precision(f.precision()));
      }
      if (!f.evaluate(primitive).is_zero()) {
        throw std::logic_error("solve_2adic_diagonal_quartic: constructed vector failed verification");
      }
      outcome = SolveOutcome{SolveStatus::solved, primitive};
      return true;
    }

    // Merge moves: a level holding three or more coefficients must contain
    // two units agreeing mod 4; try the populated levels first.
    std::array<std::vector<std::size_t>, 4> buckets;
    for (std::size_t id : st.live) buckets[st.nodes[id].level].push_back(id);
    std::vector<std::uint32_t> level_order = {0, 1, 2, 3};
    std::sort(level_order.begin(), level_order.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                if (buckets[a].size() != buckets[b].size()) {
                  return buckets[a].size() > buckets[b].size();
                }
                return a < b;
              });

    bool branched = false;
    for (std::uint32_t lvl : level_order) {
      if (buckets[lvl].size() < 3) continue;
      const auto& ids = buckets[lvl];
      for (std::size_t a = 0; a < ids.size(); ++a) {
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
          if ((st.nodes[ids[a]].unit & 3) != (st.nodes[ids[b]].unit & 3)) continue;
          branched = true;

          SolverState next = st;
          SolverNode merged;
          std::uint64_t sum = (st.nodes[ids[a]].unit + st.nodes[ids[b]].unit) % modulus;
          // Units agree mod 4, so sum = 2 * odd: exactly one level up.
          merged.level = lvl + 1;
          merged.unit = sum / 2;
          merged.merged = true;
          merged.left = ids[a];
          merged.right = ids[b];
          if (merged.level == 4) {
            // 16 * odd: renormalize to level 0 with one variable halving.
            // unit currently = sum/2 = 8*odd; shift the remaining 2^3 out.
            merged.unit /= 8;
            merged.level = 0;
            merged.halvings = 1;
          }
          next.nodes.push_back(merged);
          std::size_t merged_id = next.nodes.size() - 1;
          next.live.erase(std::remove_if(next.live.begin(), next.live.end(),
                                         [&](std::size_t id) {
                                           return id == ids[a] || id == ids[b];
                                         }),
                          next.live.end());
          next.live.push_back(merged_id);
          if (dfs(next)) return true;
          if (sequences >= max_sequences) return false;
        }
      }
    }
    if (!branched) ++sequences;  // dead end counts as an explored sequence
    return false;
  };

  SolverState state = root;
  dfs(state);
  return outcome;
}

bool phi_witness(const Prime& p, std::uint32_t degree, const DiagonalForm& f) {
  if (f.prime() != p || f.degree() != degree) {
    throw std::invalid_argument("phi_witness: form does not match (degree, p)");
  }
  if (f.n_vars() != static_cast<std::size_t>(phi(degree, p))) {
    throw std::invalid_argument("phi_witness: variable count differs from the table value");
  }
  return !is_solvable_oracle(f).solvable;
}

namespace {

// Appends one diagonal block scaled by p^level.
void append_block(std::vector<DiagonalCoefficient>& out, std::uint32_t level,
                  std::initializer_list<std::uint64_t> units) {
  for (std::uint64_t u : units) out.push_back({level, u});
}

}  // namespace

DiagonalForm stored_phi_witness(std::uint32_t degree, const Prime& p) {
  std::vector<DiagonalCoefficient> c;
  if (degree == 3 && p.value() == 2) {
    // x^3 + 2y^3 + 4z^3
    c = {{0, 1}, {1, 1}, {2, 1}};
  } else if (degree == 3 && p.value() == 7) {
    // (x^3 + 2y^3) blocks at levels 0, 1, 2; 2 is a cubic non-residue.
    for (std::uint32_t r = 0; r < 3; ++r) append_block(c, r, {1, 2});
  } else if (degree == 4 && p.value() == 3) {
    // (x^4 + y^4) blocks at levels 0..3.
    for (std::uint32_t r = 0; r < 4; ++r) append_block(c, r, {1, 1});
  } else if (degree == 4 && p.value() == 5) {
    // (x^4 + y^4 + z^4 + w^4) blocks at levels 0..3.
    for (std::uint32_t r = 0; r < 4; ++r) append_block(c, r, {1, 1, 1, 1});
  } else if (degree == 4 && p.value() == 13) {
    // (x^4 + y^4 + 2z^4) blocks at levels 0..3; the block has no
    // nontrivial zero mod 13.
    for (std::uint32_t r = 0; r < 4; ++r) append_block(c, r, {1, 1, 2});
  } else if (degree == 4 && p.value() == 2) {
    // Fifteen plain fourth powers: odd^4 = 1 mod 16, so a primitive zero
    // needs a multiple of 16 odd coordinates, and only 15 exist. The
    // 16-variable extension is solvable, matching the table boundary.
    c.assign(15, {0, 1});
  } else {
    throw std::invalid_argument("stored_phi_witness: no stored witness for this (degree, p)");
  }
  return DiagonalForm(p, degree, std::move(c));
}

PhiUpperBoundSweep verify_phi_upper_bound(std::uint32_t degree,
                                          const Prime& p) {
  bool desk_scale = (degree == 3 && p.value() <= 7) ||
                    (degree == 4 && p.value() == 3);
  if (!desk_scale) {
    throw std::invalid_argument(
        "verify_phi_upper_bound: supported for degree 3 with p <= 7 and degree 4 with p = 3");
  }
  const std::uint32_t K = 2 * valuation_of_u32(degree, p.value()) + 1;
  const std::uint32_t pK = static_cast<std::uint32_t>(pow_u64(p.value(), K));

  // Rescaling a variable multiplies its unit by a d-th power, which
  // leaves the per-variable value set unchanged, so one representative
  // per coset of the d-th powers covers every form.
  std::vector<std::uint32_t> dth_powers;
  for (std::uint32_t w = 1; w < pK; ++w) {
    if (w % p.value() == 0) continue;
    std::uint64_t wd = 1;
    for (std::uint32_t i = 0; i < degree; ++i) wd = wd * w % pK;
    dth_powers.push_back(static_cast<std::uint32_t>(wd));
  }
  std::vector<bool> seen(pK, false);
  std::vector<std::uint32_t> unit_reps;
  for (std::uint32_t u = 1; u < pK; ++u) {
    if (u % p.value() == 0 || seen[u]) continue;
    unit_reps.push_back(u);
    for (std::uint32_t w : dth_powers) {
      seen[std::uint64_t(u) * w % pK] = true;
    }
  }
  std::vector<DiagonalCoefficient> types;
  for (std::uint32_t e = 0; e < degree; ++e) {
    for (std::uint32_t u : unit_reps) types.push_back({e, u});
  }
  const std::size_t n = static_cast<std::size_t>(phi(degree, p)) + 1;

  PhiUpperBoundSweep sweep;
  std::vector<DiagonalCoefficient> current;
  std::function<void(std::size_t, std::size_t)> recurse =
      [&](std::size_t min_type, std::size_t remaining) {
        if (!sweep.all_solvable) return;
        if (remaining == 0) {
          ++sweep.multisets_examined;
          DiagonalForm f(p, degree, current);
          if (!is_solvable_oracle(f).solvable) sweep.all_solvable = false;
          return;
        }
        for (std::size_t t = min_type; t < types.size(); ++t) {
          current.push_back(types[t]);
          recurse(t, remaining - 1);
          current.pop_back();
        }
      };
  recurse(0, n);
  return sweep;
}

PadicForm compose_lb_quartic(const std::vector<PadicForm>& q,
                             const DiagonalForm& Q) {
  if (Q.degree() != 2 || Q.n_vars() != 4) {
    throw std::invalid_argument("compose_lb_quartic: Q must be a quaternary quadratic");
  }
  if (q.size() != 4) {
    throw std::invalid_argument("compose_lb_quartic: need exactly four quadratics");
  }
  if (is_solvable_oracle(Q).solvable) {
    throw std::invalid_argument("compose_lb_quartic: Q is isotropic");
  }
  const Prime& p = q[0].prime();
  std::uint32_t prec = q[0].precision();
  for (const auto& qi : q) {
    if (qi.degree() != 2 || qi.prime() != p || qi.n_vars() != q[0].n_vars()) {
      throw std::invalid_argument("compose_lb_quartic: incompatible quadratics");
    }
    prec = std::min(prec, qi.precision());
  }
  PadicForm out(p, prec, q[0].n_vars(), 4);
  for (std::size_t i = 0; i < 4; ++i) {
    PadicInt ci = Q.coefficient_value(i, prec);
    out = out + (q[i] * q[i]).scaled(ci);
  }
  return out;
}

bool has_primitive_zero_mod(const PadicForm& F, std::uint32_t k) {
  const Prime& p = F.prime();
  if (k > F.precision()) {
    throw std::invalid_argument("has_primitive_zero_mod: k exceeds the form's precision");
  }
  const std::uint64_t pk = pow_u64(p.value(), k);
  const std::size_t n = F.n_vars();
  double space = 1.0;
  for (std::size_t i = 0; i < n; ++i) space *= double(pk);
  if (space > 2e8) {
    throw std::invalid_argument("has_primitive_zero_mod: search space too large");
  }
  std::vector<std::uint64_t> x(n, 0);
  while (true) {
    bool primitive = false;
    for (auto xi : x) primitive = primitive || (xi % p.value() != 0);
    if (primitive) {
      std::vector<PadicInt> pt;
      pt.reserve(n);
      for (auto xi : x) pt.push_back(PadicInt::from_residue(p, k, xi));
      if (F.evaluate(pt).is_zero()) return true;
    }
    std::size_t i = 0;
    while (i < n && ++x[i] == pk) {
      x[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return false;
}

}  // namespace pform
