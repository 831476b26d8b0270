#pragma once

#include "dioph/system.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace dioph {

namespace detail {

// Integer roots of a*x^2 + b*x + c = 0. `any` is set when every integer is a
// root (all coefficients zero).
struct RootSet {
  bool any = false;
  std::vector<Int> roots;  // ascending, distinct
};

inline RootSet integer_roots(const Int& a, const Int& b, const Int& c) {
  RootSet r;
  if (a == 0) {
    if (b == 0) {
      r.any = c == 0;
      return r;
    }
    if (mpz_divisible_p(c.get_mpz_t(), b.get_mpz_t())) r.roots.push_back(-c / b);
    return r;
  }
  Int disc = b * b - 4 * a * c;
  if (!is_perfect_square(disc)) return r;
  Int s = isqrt(disc);
  std::set<Int> found;
  for (const Int& num : {Int(-b - s), Int(-b + s)}) {
    Int den = 2 * a;
    if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) found.insert(num / den);
  }
  r.roots.assign(found.begin(), found.end());
  return r;
}

// Substitutes every known variable of `e` and solves for `target`, which must
// be the only unknown index in `e`.
template <class Lookup>
RootSet solve_for(const Equation& e, std::size_t target, Lookup value_of) {
  auto is_t = [&](std::size_t idx) { return idx == target; };
  switch (e.kind) {
    case EqKind::Unit:
      return integer_roots(0, 1, -1);
    case EqKind::Add: {
      Int a = 0, c = 0;
      for (std::size_t idx : {e.i, e.j}) {
        if (is_t(idx)) a += 1; else c += value_of(idx);
      }
      if (is_t(e.k)) a -= 1; else c -= value_of(e.k);
      return integer_roots(0, a, c);
    }
    case EqKind::Mul: {
      // lhs = x_i * x_j as a polynomial in the target, minus rhs x_k.
      Int quad = 0, lin = 0, con = 0;
      if (is_t(e.i) && is_t(e.j)) {
        quad = 1;
      } else if (is_t(e.i) || is_t(e.j)) {
        lin = value_of(is_t(e.i) ? e.j : e.i);
      } else {
        con = value_of(e.i) * value_of(e.j);
      }
      if (is_t(e.k)) lin -= 1; else con -= value_of(e.k);
      return integer_roots(quad, lin, con);
    }
  }
  return {};
}

inline std::vector<std::size_t> distinct_indices(const Equation& e) {
  std::vector<std::size_t> v{e.i};
  if (e.kind != EqKind::Unit) v.insert(v.end(), {e.j, e.k});
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

struct PropagationResult {
  // Every variable that occurs in an equation is determined on every
  // consistent branch.
  bool closed = false;
  // One full assignment per consistent branch, sorted; variables that occur
  // in no equation hold their seeded value or 0.
  std::vector<Tuple> assignments;
  // Variables that occur in no equation and were not seeded.
  std::vector<std::size_t> free;
};

// Forced-value propagation with bounded branching. Single-unknown equations
// are solved exactly (sums, products, exact division, integer square roots).
// When stuck, branches on a single-unknown equation with two roots
// (x*x = x gives {0, 1}, x*x = v gives {-r, r}) or on the pair
// x_c + x_c = x_k, x_c * x_c = x_k ({0, 2}). If no branch point remains the
// result is not closed.
inline PropagationResult propagate(const System& s, std::vector<std::optional<Int>> known = {},
                                   std::size_t branch_limit = 1 << 16) {
  const std::size_t n = s.n();
  known.resize(n);
  std::vector<bool> occurs(n, false);
  std::vector<std::vector<std::size_t>> idx_of;
  std::vector<Equation> eqs(s.begin(), s.end());
  for (const auto& e : eqs) {
    idx_of.push_back(detail::distinct_indices(e));
    for (auto i : idx_of.back()) occurs[i - 1] = true;
  }

  PropagationResult result;
  for (std::size_t i = 0; i < n; ++i)
    if (!occurs[i] && !known[i]) result.free.push_back(i + 1);

  using State = std::vector<std::optional<Int>>;
  // Returns false on contradiction.
  auto settle = [&](State& st) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t q = 0; q < eqs.size(); ++q) {
        std::size_t unknown = 0, count = 0;
        for (auto i : idx_of[q])
          if (!st[i - 1]) { unknown = i; ++count; }
        auto val = [&](std::size_t i) -> const Int& { return *st[i - 1]; };
        if (count == 0) {
          const Equation& e = eqs[q];
          bool ok = e.kind == EqKind::Unit ? val(e.i) == 1
                    : e.kind == EqKind::Add ? val(e.i) + val(e.j) == val(e.k)
                                            : val(e.i) * val(e.j) == val(e.k);
          if (!ok) return false;
          continue;
        }
        if (count != 1) continue;
        auto roots = detail::solve_for(eqs[q], unknown, val);
        if (roots.any) continue;
        if (roots.roots.empty()) return false;
        if (roots.roots.size() == 1) {
          st[unknown - 1] = roots.roots.front();
          changed = true;
        }
      }
    }
    return true;
  };

  // A branch point: variable and candidate values.
  auto branch_point = [&](const State& st) -> std::optional<std::pair<std::size_t, std::vector<Int>>> {
    auto val = [&](std::size_t i) -> const Int& { return *st[i - 1]; };
    for (std::size_t q = 0; q < eqs.size(); ++q) {
      std::size_t unknown = 0, count = 0;
      for (auto i : idx_of[q])
        if (!st[i - 1]) { unknown = i; ++count; }
      if (count != 1) continue;
      auto roots = detail::solve_for(eqs[q], unknown, val);
      if (!roots.any && roots.roots.size() > 1) return std::make_pair(unknown, roots.roots);
    }
    for (const auto& e : eqs) {
      if (e.kind != EqKind::Add || e.i != e.j || e.i == e.k) continue;
      if (st[e.i - 1] || st[e.k - 1]) continue;
      if (s.contains(Equation::mul(e.i, e.i, e.k)))
        return std::make_pair(e.i, std::vector<Int>{0, 2});
    }
    return std::nullopt;
  };

  std::vector<State> stack{known};
  std::size_t explored = 0;
  std::set<Tuple> found;
  while (!stack.empty()) {
    State st = std::move(stack.back());
    stack.pop_back();
    if (++explored > branch_limit) return result;
    if (!settle(st)) continue;
    bool complete = true;
    for (std::size_t i = 0; i < n; ++i)
      if (occurs[i] && !st[i]) complete = false;
    if (complete) {
      Tuple t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = st[i] ? *st[i] : Int(0);
      found.insert(std::move(t));
      continue;
    }
    auto bp = branch_point(st);
    if (!bp) return result;
    for (auto it = bp->second.rbegin(); it != bp->second.rend(); ++it) {
      State child = st;
      child[bp->first - 1] = *it;
      stack.push_back(std::move(child));
    }
  }
  result.closed = true;
  result.assignments.assign(found.begin(), found.end());
  return result;
}

}  // namespace dioph
