#pragma once

#include "dioph/integer.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dioph {

using Exponents = std::vector<unsigned>;

// Graded lexicographic: lower total degree first, ties broken so that larger
// powers of earlier variables come later (x2 < x1 among linear monomials).
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const {
    auto da = std::accumulate(a.begin(), a.end(), 0UL);
    auto db = std::accumulate(b.begin(), b.end(), 0UL);
    if (da != db) return da < db;
    return a < b;
  }
};

// Sparse polynomial in Z[x_1, ..., x_p]. Zero coefficients are never stored
// and every exponent vector has length p.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Int, GradedLex>;

  Polynomial() = default;
  explicit Polynomial(std::size_t arity) : arity_(arity) {}

  static Polynomial constant(std::size_t arity, const Int& c) {
    Polynomial out(arity);
    out.add_term(Exponents(arity, 0), c);
    return out;
  }

  // x_i, 1-based.
  static Polynomial variable(std::size_t arity, std::size_t i) {
    if (i == 0 || i > arity) throw std::out_of_range("variable index out of range");
    Exponents e(arity, 0);
    e[i - 1] = 1;
    Polynomial out(arity);
    out.add_term(std::move(e), 1);
    return out;
  }

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(Exponents e, const Int& c) {
    if (e.size() != arity_) throw std::invalid_argument("exponent vector has the wrong length");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Int coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
  }

  Int constant_term() const { return coefficient(Exponents(arity_, 0)); }

  // Same polynomial viewed in more variables.
  Polynomial widened(std::size_t arity) const {
    if (arity < arity_) throw std::invalid_argument("cannot narrow a polynomial");
    if (arity == arity_) return *this;
    Polynomial out(arity);
    for (const auto& [e, c] : terms_) {
      Exponents w = e;
      w.resize(arity, 0);
      out.terms_.emplace(std::move(w), c);
    }
    return out;
  }

  // deg(P, x_i), 1-based; 0 for the zero polynomial.
  unsigned degree_in(std::size_t i) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(i - 1));
    return d;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0U));
    return d;
  }

  Int max_abs_coefficient() const {
    Int m = 0;
    for (const auto& [e, c] : terms_)
      if (abs(c) > m) m = abs(c);
    return m;
  }

  bool is_variable(std::size_t i) const {
    return arity_ >= i && i >= 1 && *this == variable(arity_, i);
  }

  Int operator()(const Tuple& point) const {
    if (point.size() != arity_) {
      throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) +
                                  " coordinates, polynomial has " + std::to_string(arity_));
    }
    Int sum = 0;
    for (const auto& [e, c] : terms_) {
      Int term = c;
      for (std::size_t i = 0; i < arity_; ++i)
        if (e[i] != 0) term *= dioph::pow(point[i], e[i]);
      sum += term;
    }
    return sum;
  }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::size_t p = std::max(a.arity_, b.arity_);
    Polynomial out = a.widened(p);
    for (const auto& [e, c] : b.widened(p).terms_) out.add_term(e, c);
    return out;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::size_t p = std::max(a.arity_, b.arity_);
    Polynomial wa = a.widened(p), wb = b.widened(p);
    Polynomial out(p);
    for (const auto& [ea, ca] : wa.terms_) {
      for (const auto& [eb, cb] : wb.terms_) {
        Exponents e(p);
        for (std::size_t i = 0; i < p; ++i) e[i] = ea[i] + eb[i];
        out.add_term(std::move(e), ca * cb);
      }
    }
    return out;
  }

  friend Polynomial operator*(const Int& s, const Polynomial& a) {
    Polynomial out(a.arity_);
    if (s == 0) return out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, s * c);
    return out;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(arity_, 1);
    Polynomial base = *this;
    while (e != 0) {
      if (e & 1U) result = result * base;
      e >>= 1;
      if (e != 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
        [](const auto& l, const auto& r) {
          if (l.first != r.first) return GradedLex{}(l.first, r.first);
          return l.second < r.second;
        });
  }

 private:
  std::size_t arity_ = 0;
  TermMap terms_;
};

// Highest-degree terms first, e.g. "x1^2 - 5*x2^2 + 1".
inline std::string to_string(const Polynomial& poly) {
  if (poly.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = poly.terms().rbegin(); it != poly.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    bool is_const = std::all_of(e.begin(), e.end(), [](unsigned d) { return d == 0; });
    Int mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (is_const) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

class PolynomialParseError : public std::runtime_error {
 public:
  PolynomialParseError(std::size_t column, const std::string& what)
      : std::runtime_error("column " + std::to_string(column) + ": " + what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

namespace detail {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := unary ('*' unary)*
// unary  := '-' unary | power
// power  := atom ['^' digits]
// atom   := digits | 'x' digits | '(' expr ')'
class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

  std::size_t max_index() const { return max_index_; }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw PolynomialParseError(pos_ + 1, what); }

  void skip_ws() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (!accept('^')) return base;
    skip_ws();
    std::string d = digits();
    if (d.empty()) fail("exponent must be a nonnegative integer literal");
    if (d.size() > 6) fail("exponent too large");
    return base.pow(static_cast<unsigned>(std::stoul(d)));
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(0, Int(digits(), 10));
    if (c == 'x') {
      ++pos_;
      std::string d = digits();
      if (d.empty() || d.size() > 9) fail("expected a variable index after 'x'");
      std::size_t idx = std::stoul(d);
      if (idx == 0) fail("variable indices start at x1");
      max_index_ = std::max(max_index_, idx);
      return Polynomial::variable(idx, idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t max_index_ = 0;
};

}  // namespace detail

// Grammar: integer literals, variables x1..xp, + - * ^ and parentheses.
// Exponents are nonnegative integer literals. An optional leading header
// line "p <int>" declares the arity; otherwise p is the highest index used.
inline Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> declared_arity = {}) {
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  if (start < text.size() && text[start] == 'p') {
    std::size_t nl = text.find('\n', start);
    std::string header(text.substr(start + 1, nl == std::string_view::npos ? std::string_view::npos : nl - start - 1));
    std::size_t hash = header.find('#');
    if (hash != std::string::npos) header.resize(hash);
    try {
      std::size_t used = 0;
      long v = std::stol(header, &used);
      if (v < 0 || header.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("");
      if (!declared_arity) declared_arity = static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
      throw PolynomialParseError(start + 1, "malformed header, expected 'p <int>'");
    }
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  }
  detail::PolynomialParser parser(text);
  Polynomial p = parser.parse();
  std::size_t arity = parser.max_index();
  if (declared_arity) {
    if (*declared_arity < arity)
      throw PolynomialParseError(0, "declared arity " + std::to_string(*declared_arity) + " is below x" +
                                        std::to_string(arity));
    arity = *declared_arity;
  }
  return p.widened(arity);
}

inline Int eval_polynomial(const Polynomial& p, const Tuple& point) { return p(point); }

}  // namespace dioph
