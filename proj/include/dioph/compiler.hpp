#pragma once

#include "dioph/polynomial.hpp"
#include "dioph/system.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dioph {

// Doubled lowers 2*D = 0; Halved lowers D = 0 directly.
enum class Variant { Doubled, Halved };

inline const char* to_string(Variant v) { return v == Variant::Doubled ? "doubled" : "halved"; }

// An E_n system equivalent to D(x_1, ..., x_p) = 0. Indices 1..p are the
// inputs; meaning[s - 1] is the polynomial that x_s equals in the unique
// extension of an input point; x_q denotes 2*D or D and the system contains
// x_q + x_q = x_q.
struct CompiledSystem {
  System system;
  std::vector<Polynomial> meaning;
  std::size_t q = 0;
  Variant variant = Variant::Halved;
  std::size_t p = 0;

  std::size_t n() const { return system.n(); }
};

// (2M+1)^((d_1+1)...(d_p+1)) where M and d_i come from 2*D (Doubled) or D
// (Halved).
inline Int card_T(const Polynomial& poly, Variant variant) {
  if (poly.is_zero()) throw std::invalid_argument("card_T: zero polynomial");
  Int m = poly.max_abs_coefficient();
  if (variant == Variant::Doubled) m *= 2;
  unsigned long slots = 1;
  for (std::size_t i = 1; i <= poly.arity(); ++i) {
    unsigned long f = poly.degree_in(i) + 1UL;
    if (slots > std::numeric_limits<unsigned long>::max() / f)
      throw std::overflow_error("card_T: exponent does not fit in a machine word");
    slots *= f;
  }
  return pow(2 * m + 1, slots);
}

namespace detail {

// Emits a straight-line program where every fresh variable is fixed by one
// equation over earlier variables. Meanings are memoized, so a polynomial is
// materialized at most once.
class StraightLineBuilder {
 public:
  explicit StraightLineBuilder(std::size_t p) : p_(p) {
    for (std::size_t i = 1; i <= p; ++i) {
      meaning_.push_back(Polynomial::variable(p, i));
      index_of_.emplace(meaning_.back(), i);
    }
  }

  std::size_t one() {
    return lookup_or_emit(Polynomial::constant(p_, 1), [](std::size_t v) { return Equation::unit(v); });
  }

  std::size_t zero() {
    return lookup_or_emit(Polynomial(p_), [](std::size_t v) { return Equation::add(v, v, v); });
  }

  std::size_t add(std::size_t a, std::size_t b) {
    return lookup_or_emit(meaning_[a - 1] + meaning_[b - 1],
                          [=](std::size_t v) { return Equation::add(a, b, v); });
  }

  // x_t = x_a - x_b, written as x_t + x_b = x_a.
  std::size_t sub(std::size_t a, std::size_t b) {
    return lookup_or_emit(meaning_[a - 1] - meaning_[b - 1],
                          [=](std::size_t v) { return Equation::add(v, b, a); });
  }

  std::size_t mul(std::size_t a, std::size_t b) {
    return lookup_or_emit(meaning_[a - 1] * meaning_[b - 1],
                          [=](std::size_t v) { return Equation::mul(a, b, v); });
  }

  // c >= 1 by doubling and adding 1, most significant bit first.
  std::size_t constant(const Int& c) {
    if (c < 1) throw std::invalid_argument("constant: expected c >= 1");
    std::size_t u = one();
    std::size_t acc = u;
    std::string bits = c.get_str(2);
    for (std::size_t b = 1; b < bits.size(); ++b) {
      acc = add(acc, acc);
      if (bits[b] == '1') acc = add(acc, u);
    }
    return acc;
  }

  std::size_t power(std::size_t base, unsigned e) {
    std::optional<std::size_t> result;
    while (e != 0) {
      if (e & 1U) result = result ? mul(*result, base) : base;
      e >>= 1;
      if (e != 0) base = mul(base, base);
    }
    return result ? *result : one();
  }

  std::size_t monomial(const Exponents& e) {
    std::optional<std::size_t> acc;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::size_t f = power(i + 1, e[i]);
      acc = acc ? mul(*acc, f) : f;
    }
    return acc ? *acc : one();
  }

  // |c| * monomial, c != 0.
  std::size_t scaled_monomial(const Exponents& e, const Int& magnitude) {
    bool is_const = std::all_of(e.begin(), e.end(), [](unsigned d) { return d == 0; });
    if (is_const) return constant(magnitude);
    std::size_t m = monomial(e);
    if (magnitude == 1) return m;
    return mul(constant(magnitude), m);
  }

  std::vector<Polynomial> take_meaning() { return std::move(meaning_); }
  std::vector<Equation> take_equations() { return std::move(equations_); }
  std::size_t size() const { return meaning_.size(); }

  void emit(const Equation& e) { equations_.push_back(e); }

 private:
  template <class MakeEquation>
  std::size_t lookup_or_emit(Polynomial m, MakeEquation make) {
    if (auto it = index_of_.find(m); it != index_of_.end()) return it->second;
    std::size_t v = meaning_.size() + 1;
    meaning_.push_back(m);
    index_of_.emplace(std::move(m), v);
    equations_.push_back(make(v));
    return v;
  }

  std::size_t p_;
  std::vector<Polynomial> meaning_;
  std::map<Polynomial, std::size_t> index_of_;
  std::vector<Equation> equations_;
};

inline System assemble(std::size_t n, const std::vector<Equation>& eqs) {
  System s(n);
  for (const auto& e : eqs) s.insert(e);
  return s;
}

}  // namespace detail

// Straight-line lowering: constants by doubling, powers by squaring, positive
// and negative parts summed separately and joined by x_t + x_neg = x_pos.
inline CompiledSystem compile_compact(const Polynomial& poly, Variant variant = Variant::Halved) {
  if (poly.is_zero()) throw std::invalid_argument("compile_compact: zero polynomial");
  const std::size_t p = poly.arity();
  detail::StraightLineBuilder b(p);

  std::optional<std::size_t> pos, neg;
  for (auto it = poly.terms().rbegin(); it != poly.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::size_t t = b.scaled_monomial(e, abs(c));
    auto& side = c > 0 ? pos : neg;
    side = side ? b.add(*side, t) : t;
  }

  std::size_t d;
  if (pos && neg) {
    d = b.sub(*pos, *neg);
  } else if (pos) {
    d = *pos;
  } else {
    d = b.sub(b.zero(), *neg);
  }
  std::size_t q = variant == Variant::Doubled ? b.add(d, d) : d;
  b.emit(Equation::add(q, q, q));

  std::size_t n = b.size();
  auto eqs = b.take_equations();
  return CompiledSystem{detail::assemble(n, eqs), b.take_meaning(), q, variant, p};
}

inline constexpr std::size_t kDefaultFullTCeiling = 5000;

// The literal family T: every polynomial with coefficients in [-M, M] and
// deg(W, x_i) <= deg(D, x_i), where M is the largest |coefficient| of 2*D.
// Indices 1..p are x_1..x_p; the other members follow in order of total
// degree, then coefficients from the highest monomial down. The system holds
// every x_i = 1, x_i + x_j = x_k and x_i * x_j = x_k that is a polynomial
// identity, plus x_q + x_q = x_q for the member 2*D.
inline CompiledSystem compile_full_T(const Polynomial& poly, std::size_t ceiling = kDefaultFullTCeiling) {
  if (poly.is_zero()) throw std::invalid_argument("compile_full_T: zero polynomial");
  const std::size_t p = poly.arity();
  Int card_big = card_T(poly, Variant::Doubled);
  if (card_big > Int(static_cast<unsigned long>(ceiling))) {
    throw std::length_error("compile_full_T: card(T) = " + card_big.get_str() + " exceeds the ceiling " +
                            std::to_string(ceiling));
  }
  const std::size_t card = card_big.get_ui();
  std::vector<unsigned> max_deg(p);
  for (std::size_t i = 0; i < p; ++i) {
    max_deg[i] = poly.degree_in(i + 1);
    if (max_deg[i] == 0)
      throw std::invalid_argument("compile_full_T: x" + std::to_string(i + 1) + " does not occur in D");
  }
  const Polynomial doubled = Int(2) * poly;
  const long m = doubled.max_abs_coefficient().get_si();
  const long radix = 2 * m + 1;

  // Monomial slots in graded order.
  std::vector<Exponents> slots;
  {
    Exponents e(p, 0);
    while (true) {
      slots.push_back(e);
      std::size_t i = 0;
      while (i < p && e[i] == max_deg[i]) e[i++] = 0;
      if (i == p) break;
      ++e[i];
    }
    std::sort(slots.begin(), slots.end(), GradedLex{});
  }
  const std::size_t ns = slots.size();
  std::map<Exponents, std::size_t> slot_of;
  for (std::size_t s = 0; s < ns; ++s) slot_of.emplace(slots[s], s);
  // slot_sum[s][t]: slot of e_s + e_t, or -1 when it leaves the degree box.
  std::vector<std::vector<long>> slot_sum(ns, std::vector<long>(ns, -1));
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t t = 0; t < ns; ++t) {
      Exponents e(p);
      for (std::size_t i = 0; i < p; ++i) e[i] = slots[s][i] + slots[t][i];
      if (auto it = slot_of.find(e); it != slot_of.end()) slot_sum[s][t] = static_cast<long>(it->second);
    }
  }

  using Coeffs = std::vector<long>;
  auto code_of = [&](const Coeffs& c) {
    std::size_t code = 0;
    for (std::size_t s = ns; s-- > 0;) code = code * radix + static_cast<std::size_t>(c[s] + m);
    return code;
  };
  auto degree_of = [&](const Coeffs& c) {
    long d = -1;
    for (std::size_t s = 0; s < ns; ++s)
      if (c[s] != 0) d = std::max<long>(d, std::accumulate(slots[s].begin(), slots[s].end(), 0L));
    return d;
  };

  std::vector<Coeffs> members;
  members.reserve(card);
  {
    Coeffs c(ns, -m);
    while (true) {
      members.push_back(c);
      std::size_t s = 0;
      while (s < ns && c[s] == m) c[s++] = -m;
      if (s == ns) break;
      ++c[s];
    }
  }
  auto is_variable = [&](const Coeffs& c) -> std::size_t {
    for (std::size_t i = 0; i < p; ++i) {
      Exponents e(p, 0);
      e[i] = 1;
      std::size_t s = slot_of.at(e);
      bool match = true;
      for (std::size_t t = 0; t < ns && match; ++t) match = c[t] == (t == s ? 1 : 0);
      if (match) return i + 1;
    }
    return 0;
  };
  std::vector<Coeffs> ordered(p);
  std::vector<Coeffs> rest;
  for (auto& c : members) {
    if (std::size_t v = is_variable(c)) {
      ordered[v - 1] = std::move(c);
    } else {
      rest.push_back(std::move(c));
    }
  }
  std::vector<long> rest_deg(rest.size());
  std::vector<std::size_t> perm(rest.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t r = 0; r < rest.size(); ++r) rest_deg[r] = degree_of(rest[r]);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (rest_deg[a] != rest_deg[b]) return rest_deg[a] < rest_deg[b];
    return std::lexicographical_compare(rest[a].rbegin(), rest[a].rend(), rest[b].rbegin(), rest[b].rend());
  });
  for (auto r : perm) ordered.push_back(std::move(rest[r]));

  std::vector<std::uint32_t> index_of_code(card);
  std::vector<std::vector<long>> degrees(card, std::vector<long>(p, 0));
  std::vector<bool> is_zero(card, true);
  for (std::size_t v = 0; v < card; ++v) {
    index_of_code[code_of(ordered[v])] = static_cast<std::uint32_t>(v + 1);
    for (std::size_t s = 0; s < ns; ++s) {
      if (ordered[v][s] == 0) continue;
      is_zero[v] = false;
      for (std::size_t i = 0; i < p; ++i)
        degrees[v][i] = std::max<long>(degrees[v][i], slots[s][i]);
    }
  }

  std::vector<Equation> eqs;
  Coeffs one(ns, 0);
  one[0] = 1;
  std::size_t one_idx = index_of_code[code_of(one)];
  eqs.push_back(Equation::unit(one_idx));

  Coeffs tmp(ns);
  for (std::size_t a = 0; a < card; ++a) {
    for (std::size_t b = a; b < card; ++b) {
      bool in_range = true;
      for (std::size_t s = 0; s < ns && in_range; ++s) {
        tmp[s] = ordered[a][s] + ordered[b][s];
        in_range = tmp[s] >= -m && tmp[s] <= m;
      }
      if (in_range) eqs.push_back(Equation::add(a + 1, b + 1, index_of_code[code_of(tmp)]));

      // Over Z the degree of a product of nonzero factors is the sum.
      bool fits = true;
      if (!is_zero[a] && !is_zero[b]) {
        for (std::size_t i = 0; i < p && fits; ++i) fits = degrees[a][i] + degrees[b][i] <= max_deg[i];
      }
      if (!fits) continue;
      std::fill(tmp.begin(), tmp.end(), 0);
      for (std::size_t s = 0; s < ns; ++s) {
        if (ordered[a][s] == 0) continue;
        for (std::size_t t = 0; t < ns; ++t) {
          if (ordered[b][t] == 0) continue;
          tmp[slot_sum[s][t]] += ordered[a][s] * ordered[b][t];
        }
      }
      if (std::all_of(tmp.begin(), tmp.end(), [&](long c) { return c >= -m && c <= m; }))
        eqs.push_back(Equation::mul(a + 1, b + 1, index_of_code[code_of(tmp)]));
    }
  }

  std::vector<Polynomial> meaning;
  meaning.reserve(card);
  for (const auto& c : ordered) {
    Polynomial w(p);
    for (std::size_t s = 0; s < ns; ++s) w.add_term(slots[s], c[s]);
    meaning.push_back(std::move(w));
  }
  Coeffs target(ns, 0);
  for (const auto& [e, c] : doubled.terms()) target[slot_of.at(e)] = c.get_si();
  std::size_t q = index_of_code[code_of(target)];
  eqs.push_back(Equation::add(q, q, q));

  return CompiledSystem{detail::assemble(card, eqs), std::move(meaning), q, Variant::Doubled, p};
}

// The unique full assignment above an input point: x_s = meaning_s(point).
inline Tuple extend_solution(const CompiledSystem& c, const Tuple& point) {
  if (point.size() != c.p) {
    throw std::invalid_argument("extend_solution: point has " + std::to_string(point.size()) +
                                " coordinates, expected " + std::to_string(c.p));
  }
  Tuple out;
  out.reserve(c.meaning.size());
  for (const auto& m : c.meaning) out.push_back(m(point));
  return out;
}

// "index: polynomial" per variable followed by "q: <index>".
inline std::string render_sidecar(const CompiledSystem& c) {
  std::string out;
  for (std::size_t s = 0; s < c.meaning.size(); ++s)
    out += std::to_string(s + 1) + ": " + to_string(c.meaning[s]) + "\n";
  out += "q: " + std::to_string(c.q) + "\n";
  return out;
}

// Lexicographically least (a, b, c, d) with a <= b <= c <= d and
// a^2 + b^2 + c^2 + d^2 = v.
inline std::array<Int, 4> four_square(const Int& v) {
  if (v < 0) throw std::invalid_argument("four_square: negative input " + v.get_str());
  for (Int a = 0; 4 * a * a <= v; ++a) {
    for (Int b = a; a * a + 3 * b * b <= v; ++b) {
      for (Int c = b; a * a + b * b + 2 * c * c <= v; ++c) {
        Int r = v - a * a - b * b - c * c;
        if (is_perfect_square(r)) return {a, b, c, isqrt(r)};
      }
    }
  }
  throw std::logic_error("four_square: no decomposition found");
}

// Index of the l-th square witness (l = 1..4) for x_i in the integerized
// polynomial over r + 4r variables.
inline std::size_t square_slot(std::size_t r, std::size_t i, std::size_t l) { return r + 4 * (i - 1) + l; }

// F = W^2 + sum_i (x_i - s_i1^2 - s_i2^2 - s_i3^2 - s_i4^2)^2 over Z, so that
// F = 0 iff W = 0 with every x_i a sum of four squares, i.e. x_i >= 0.
inline Polynomial integerize_nonneg(const Polynomial& w) {
  const std::size_t r = w.arity();
  if (r < 2) throw std::invalid_argument("integerize_nonneg: W needs at least 2 variables");
  const std::size_t total = 5 * r;
  Polynomial f = w.widened(total).pow(2);
  for (std::size_t i = 1; i <= r; ++i) {
    Polynomial diff = Polynomial::variable(total, i);
    for (std::size_t l = 1; l <= 4; ++l) diff = diff - Polynomial::variable(total, square_slot(r, i, l)).pow(2);
    f = f + diff.pow(2);
  }
  return f;
}

}  // namespace dioph
