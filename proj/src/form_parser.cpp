#include <cctype>
#include <cstdlib>
#include <stdexcept>

#include "pform/forms.hpp"

namespace pform {

namespace {

struct ParsedTerm {
  std::int64_t coeff = 1;
  std::vector<std::pair<std::size_t, std::uint32_t>> powers;  // (var, exp)
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char get() {
    skip_ws();
    return text_[pos_++];
  }
  bool consume_word(const std::string& w) {
    skip_ws();
    if (text_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw std::invalid_argument("parse_form: expected integer at position " + std::to_string(start));
    return std::stoll(text_.substr(start, pos_ - start));
  }

private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

// Variable token: x, y, z, w, or x<number>.
std::size_t parse_variable(Lexer& lex, char first) {
  if (first == 'x') {
    if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
      std::int64_t idx = lex.integer();
      if (idx < 1) throw std::invalid_argument("parse_form: variable index must be >= 1");
      return static_cast<std::size_t>(idx - 1);
    }
    return 0;
  }
  if (first == 'y') return 1;
  if (first == 'z') return 2;
  if (first == 'w') return 3;
  throw std::invalid_argument(std::string("parse_form: unexpected variable '") + first + "'");
}

}  // namespace

Form parse_form(const std::string& text, std::size_t min_vars) {
  auto mod_pos = text.rfind("mod");
  if (mod_pos == std::string::npos) {
    throw std::invalid_argument("parse_form: missing 'mod p' suffix");
  }
  std::uint32_t pv = 0;
  {
    std::size_t i = mod_pos + 3;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw std::invalid_argument("parse_form: missing modulus");
    pv = static_cast<std::uint32_t>(std::stoul(text.substr(start, i - start)));
    while (i < text.size()) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        throw std::invalid_argument("parse_form: trailing characters after modulus");
      }
      ++i;
    }
  }
  Prime p(pv);
  std::string body = text.substr(0, mod_pos);
  Lexer lex(body);

  std::vector<ParsedTerm> parsed;
  bool negative = false;
  if (lex.peek() == '-') {
    lex.get();
    negative = true;
  } else if (lex.peek() == '+') {
    lex.get();
  }

  while (!lex.done()) {
    ParsedTerm term;
    term.coeff = negative ? -1 : 1;
    bool saw_factor = false;
    bool expect_factor = true;
    while (expect_factor) {
      char c = lex.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        term.coeff *= lex.integer();
        saw_factor = true;
      } else if (c == 'x' || c == 'y' || c == 'z' || c == 'w') {
        lex.get();
        std::size_t var = parse_variable(lex, c);
        std::uint32_t exp = 1;
        if (lex.peek() == '^') {
          lex.get();
          std::int64_t e = lex.integer();
          if (e < 1) throw std::invalid_argument("parse_form: exponent must be >= 1");
          exp = static_cast<std::uint32_t>(e);
        }
        term.powers.emplace_back(var, exp);
        saw_factor = true;
      } else if (c == '(' || c == ')') {
        throw std::invalid_argument("parse_form: parentheses are not supported");
      } else {
        throw std::invalid_argument(std::string("parse_form: unexpected character '") + c + "'");
      }
      // Factors joined by '*' or by juxtaposition (e.g. 3*x*y^2, 3xy^2).
      char nxt = lex.done() ? '\0' : lex.peek();
      if (nxt == '*') {
        lex.get();
        expect_factor = true;
      } else if (nxt == 'x' || nxt == 'y' || nxt == 'z' || nxt == 'w' ||
                 std::isdigit(static_cast<unsigned char>(nxt))) {
        expect_factor = true;
      } else {
        expect_factor = false;
      }
    }
    if (!saw_factor) throw std::invalid_argument("parse_form: empty term");
    parsed.push_back(std::move(term));

    if (lex.done()) break;
    char sep = lex.get();
    if (sep == '+') {
      negative = false;
    } else if (sep == '-') {
      negative = true;
    } else {
      throw std::invalid_argument(std::string("parse_form: expected '+' or '-', got '") + sep + "'");
    }
    if (lex.done()) throw std::invalid_argument("parse_form: dangling sign");
  }

  if (parsed.empty()) throw std::invalid_argument("parse_form: no terms");

  std::size_t n_vars = min_vars;
  std::uint32_t degree = 0;
  for (const auto& t : parsed) {
    std::uint32_t d = 0;
    for (auto [var, exp] : t.powers) {
      n_vars = std::max(n_vars, var + 1);
      d += exp;
    }
    degree = std::max(degree, d);
  }
  if (n_vars == 0) n_vars = 1;
  if (degree == 0) throw std::invalid_argument("parse_form: constant terms are not a form");

  Form f(p, n_vars, degree);
  for (const auto& t : parsed) {
    Monomial m(n_vars, 0);
    std::uint32_t d = 0;
    for (auto [var, exp] : t.powers) {
      m[var] = static_cast<std::uint8_t>(m[var] + exp);
      d += exp;
    }
    if (d != degree) {
      throw std::invalid_argument("parse_form: form is not homogeneous");
    }
    f.add_term(m, t.coeff);
  }
  return f;
}

}  // namespace pform
