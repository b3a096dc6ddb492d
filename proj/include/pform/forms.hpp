// forms.hpp
//
// Sparse homogeneous forms over F_p. Terms are kept in a map under graded
// lexicographic (here: plain lexicographic, degrees being equal) monomial
// order, so equal forms have equal term maps and printed literals are
// canonical.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pform/gfp.hpp"

namespace pform {

// Exponent vector of a single monomial; one entry per variable.
using Monomial = std::vector<std::uint8_t>;

// x_j <- sum_i matrix[i][j] * (old variable i): each column is the image
// of one new variable in the old coordinates.
struct LinearSubstitution {
  Prime prime;
  std::size_t n_old = 0;  // rows
  std::size_t n_new = 0;  // columns
  std::vector<fp_t> entries;  // row-major, n_old x n_new

  fp_t at(std::size_t row, std::size_t col) const {
    return entries[row * n_new + col];
  }
  static LinearSubstitution identity(const Prime& p, std::size_t n);
};

class Form {
public:
  Form(const Prime& p, std::size_t n_vars, std::uint32_t degree);

  const Prime& prime() const { return prime_; }
  std::size_t n_vars() const { return n_vars_; }
  std::uint32_t degree() const { return degree_; }
  const std::map<Monomial, fp_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds c * monomial, accumulating and dropping cancelled terms.
  void add_term(const Monomial& exponents, std::int64_t coeff);
  fp_t coefficient(const Monomial& exponents) const;

  fp_t evaluate(const std::vector<fp_t>& point) const;
  std::vector<fp_t> gradient(const std::vector<fp_t>& point) const;

  Form substituted(const LinearSubstitution& s) const;
  Form scaled(fp_t a) const;
  Form permuted(const std::vector<std::size_t>& perm) const;

  // Product of two forms over the same prime (degrees add).
  Form operator*(const Form& g) const;
  Form operator+(const Form& g) const;

  bool operator==(const Form& g) const;
  bool operator!=(const Form& g) const { return !(*this == g); }
  bool operator<(const Form& g) const;  // lexicographic on canonical terms

  std::string to_string() const;  // parser-compatible literal with "mod p"

private:
  Prime prime_;
  std::size_t n_vars_;
  std::uint32_t degree_;
  std::map<Monomial, fp_t> terms_;
};

struct SimilarityWitness {
  fp_t form_scale = 1;
  std::vector<fp_t> variable_scales;
};

// f(x) = a * g(a_1 x_1, ..., a_m x_m) for some nonzero a, a_i.
// Exhaustive over all (p-1)^(m+1) scalings; guarded to n_vars <= 3.
std::optional<SimilarityWitness> are_similar(const Form& f, const Form& g);

// Some variable permutation of g is similar to f.
bool similar_up_to_permutation(const Form& f, const Form& g);

// Parses literals like "x^3*y^2 + 3*y^3*z^2 mod 13". Variables are
// x, y, z, w or x1..xn; coefficients are integers, reduced mod p.
// n_vars is inferred from the variables used unless min_vars raises it.
Form parse_form(const std::string& text, std::size_t min_vars = 0);

}  // namespace pform
