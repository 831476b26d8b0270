#pragma once

#include "dioph/integer.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dioph {

enum class EqKind : std::uint8_t { Unit, Add, Mul };

// One equation of E_n: x_i = 1, x_i + x_j = x_k or x_i * x_j = x_k.
// Indices are 1-based. Add and Mul are stored with i <= j; a Unit keeps
// j == k == 0.
struct Equation {
  EqKind kind = EqKind::Unit;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  static Equation unit(std::size_t i) {
    require_index(i);
    return {EqKind::Unit, i, 0, 0};
  }
  static Equation add(std::size_t i, std::size_t j, std::size_t k) {
    return binary(EqKind::Add, i, j, k);
  }
  static Equation mul(std::size_t i, std::size_t j, std::size_t k) {
    return binary(EqKind::Mul, i, j, k);
  }

  std::size_t max_index() const { return std::max({i, j, k}); }

  bool holds(const Tuple& t) const {
    switch (kind) {
      case EqKind::Unit: return t[i - 1] == 1;
      case EqKind::Add: return t[i - 1] + t[j - 1] == t[k - 1];
      case EqKind::Mul: return t[i - 1] * t[j - 1] == t[k - 1];
    }
    return false;
  }

  // Ordering: Unit < Add < Mul, then by (i, j, k).
  friend auto operator<=>(const Equation&, const Equation&) = default;

 private:
  static void require_index(std::size_t idx) {
    if (idx == 0) throw std::invalid_argument("variable indices are 1-based");
  }
  static Equation binary(EqKind kind, std::size_t i, std::size_t j, std::size_t k) {
    require_index(i);
    require_index(j);
    require_index(k);
    if (j < i) std::swap(i, j);
    return {kind, i, j, k};
  }
};

inline std::string to_string(const Equation& e) {
  std::string s = "x" + std::to_string(e.i);
  switch (e.kind) {
    case EqKind::Unit: return s + " = 1";
    case EqKind::Add: return s + " + x" + std::to_string(e.j) + " = x" + std::to_string(e.k);
    case EqKind::Mul: return s + " * x" + std::to_string(e.j) + " = x" + std::to_string(e.k);
  }
  return s;
}

// A finite subset of E_n. Equations are kept canonical and duplicate-free.
class System {
 public:
  explicit System(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("a system needs n >= 1 variables");
  }

  std::size_t n() const { return n_; }
  std::size_t size() const { return equations_.size(); }
  bool empty() const { return equations_.empty(); }
  const std::set<Equation>& equations() const { return equations_; }
  auto begin() const { return equations_.begin(); }
  auto end() const { return equations_.end(); }

  // Returns false when the equation was already present.
  bool insert(const Equation& e) {
    if (e.max_index() > n_) {
      throw std::out_of_range("index " + std::to_string(e.max_index()) +
                              " exceeds n=" + std::to_string(n_));
    }
    return equations_.insert(e).second;
  }

  bool contains(const Equation& e) const { return equations_.contains(e); }

  friend bool operator==(const System&, const System&) = default;

 private:
  std::size_t n_;
  std::set<Equation> equations_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

inline bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

// Tokens of an equation line: "x<i>", "1", "+", "*", "=". Whitespace between
// tokens is ignored.
inline std::vector<std::string> tokenize_equation(std::string_view s, std::size_t line_no) {
  std::vector<std::string> out;
  std::size_t p = 0;
  while (p < s.size()) {
    unsigned char c = s[p];
    if (std::isspace(c)) {
      ++p;
    } else if (c == '+' || c == '*' || c == '=') {
      out.emplace_back(1, static_cast<char>(c));
      ++p;
    } else if (c == 'x' || std::isdigit(c)) {
      std::size_t q = p + 1;
      while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
      if (c == 'x' && q == p + 1) throw ParseError(line_no, "expected digits after 'x'");
      out.emplace_back(s.substr(p, q - p));
      p = q;
    } else {
      throw ParseError(line_no, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }
  return out;
}

inline std::size_t parse_count(std::string_view digits, std::size_t line_no, const char* what) {
  if (digits.empty() || digits.size() > 18 ||
      !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ParseError(line_no, std::string("malformed ") + what);
  return std::stoull(std::string(digits));
}

inline std::size_t variable_index(const std::string& tok, std::size_t line_no) {
  if (tok.size() < 2 || tok[0] != 'x') throw ParseError(line_no, "expected a variable, got '" + tok + "'");
  std::size_t idx = parse_count(std::string_view(tok).substr(1), line_no, "variable index");
  if (idx == 0) throw ParseError(line_no, "variable indices start at x1");
  return idx;
}

inline Equation parse_equation(std::string_view s, std::size_t line_no) {
  auto tok = tokenize_equation(s, line_no);
  if (tok.size() == 3 && tok[1] == "=" && tok[2] == "1")
    return Equation::unit(variable_index(tok[0], line_no));
  if (tok.size() == 5 && (tok[1] == "+" || tok[1] == "*") && tok[3] == "=") {
    std::size_t i = variable_index(tok[0], line_no);
    std::size_t j = variable_index(tok[2], line_no);
    std::size_t k = variable_index(tok[4], line_no);
    return tok[1] == "+" ? Equation::add(i, j, k) : Equation::mul(i, j, k);
  }
  throw ParseError(line_no, "expected 'xi = 1', 'xi + xj = xk' or 'xi * xj = xk'");
}

}  // namespace detail

// Text format: the first non-comment line is "n <int>", then one equation per
// line. '#' starts a comment.
inline System parse_system(std::string_view text) {
  auto lines = detail::split_lines(text);
  std::size_t line_no = 0;
  std::optional<System> sys;
  for (auto raw : lines) {
    ++line_no;
    auto line = detail::strip_comment(raw);
    if (detail::is_blank(line)) continue;
    if (!sys) {
      std::istringstream in{std::string(line)};
      std::string key, value, rest;
      in >> key >> value;
      if (key != "n" || value.empty() || (in >> rest))
        throw ParseError(line_no, "expected header 'n <int>'");
      if (value[0] == '-') throw ParseError(line_no, "n must be positive");
      std::size_t n = detail::parse_count(value, line_no, "variable count");
      if (n == 0) throw ParseError(line_no, "n must be positive");
      sys.emplace(n);
      continue;
    }
    Equation e = detail::parse_equation(line, line_no);
    if (e.max_index() > sys->n()) {
      throw ParseError(line_no, "index " + std::to_string(e.max_index()) +
                                    " exceeds n=" + std::to_string(sys->n()));
    }
    sys->insert(e);
  }
  if (!sys) throw ParseError(line_no, "missing header 'n <int>'");
  return std::move(*sys);
}

// Canonical rendering: Unit, then Add, then Mul, each sorted by (i, j, k).
inline std::string render_system(const System& s) {
  std::string out = "n " + std::to_string(s.n()) + "\n";
  for (const auto& e : s) out += to_string(e) + "\n";
  return out;
}

inline bool check_solution(const System& s, const Tuple& t) {
  if (t.size() != s.n()) {
    throw std::invalid_argument("tuple length " + std::to_string(t.size()) +
                                " does not match n=" + std::to_string(s.n()));
  }
  return std::all_of(s.begin(), s.end(), [&](const Equation& e) { return e.holds(t); });
}

// Replaces every x_i = 1 by x_i * x_j = x_j for j = 1..n. The integer
// solutions of the result are those of s plus the zero tuple.
inline System tilde(const System& s) {
  System out(s.n());
  for (const auto& e : s) {
    if (e.kind != EqKind::Unit) {
      out.insert(e);
      continue;
    }
    for (std::size_t j = 1; j <= s.n(); ++j) out.insert(Equation::mul(e.i, j, j));
  }
  return out;
}

// ---- tuples ---------------------------------------------------------------

inline std::string format_tuple(const Tuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += t[i].get_str();
  }
  return out;
}

inline Tuple parse_tuple(std::string_view line) {
  Tuple t;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    t.push_back(parse_int(field));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return t;
}

// One tuple per line; blank and '#' lines are skipped.
inline std::vector<Tuple> parse_tuples(std::string_view text) {
  std::vector<Tuple> out;
  std::size_t line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto line = detail::strip_comment(raw);
    if (detail::is_blank(line)) continue;
    try {
      out.push_back(parse_tuple(line));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

}  // namespace dioph
