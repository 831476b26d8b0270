#pragma once

#include "dioph/system.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace dioph {

using Triple = std::array<std::size_t, 3>;

// Every unit, additive and multiplicative relation satisfied by a tuple.
// Triples are 1-based and canonical (i <= j).
struct RelationSet {
  std::size_t n = 0;
  std::set<std::size_t> units;
  std::set<Triple> adds;
  std::set<Triple> muls;

  std::size_t size() const { return units.size() + adds.size() + muls.size(); }

  bool contains(const Equation& e) const {
    switch (e.kind) {
      case EqKind::Unit: return units.contains(e.i);
      case EqKind::Add: return adds.contains({e.i, e.j, e.k});
      case EqKind::Mul: return muls.contains({e.i, e.j, e.k});
    }
    return false;
  }

  // The relations read back as a system of E_n.
  System as_system(bool include_units) const {
    System s(n);
    if (include_units)
      for (auto i : units) s.insert(Equation::unit(i));
    for (const auto& [i, j, k] : adds) s.insert(Equation::add(i, j, k));
    for (const auto& [i, j, k] : muls) s.insert(Equation::mul(i, j, k));
    return s;
  }

  friend bool operator==(const RelationSet&, const RelationSet&) = default;
};

// All pairs i <= j are scanned; the k side is found by binary search over the
// indices sorted by value, so the cost is O(n^2 log n) exact comparisons.
inline RelationSet relations_of(const Tuple& t) {
  if (t.empty()) throw std::invalid_argument("relations_of: empty tuple");
  const std::size_t n = t.size();
  RelationSet rel;
  rel.n = n;

  std::vector<std::size_t> by_value(n);
  std::iota(by_value.begin(), by_value.end(), 0);
  std::stable_sort(by_value.begin(), by_value.end(),
                   [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
  auto lookup = [&](const Int& target, std::set<Triple>& into, std::size_t i, std::size_t j) {
    auto [lo, hi] = std::equal_range(
        by_value.begin(), by_value.end(), target,
        [&](const auto& a, const auto& b) {
          if constexpr (std::is_same_v<std::decay_t<decltype(a)>, Int>) {
            return a < t[b];
          } else {
            return t[a] < b;
          }
        });
    for (auto it = lo; it != hi; ++it) into.insert({i + 1, j + 1, *it + 1});
  };

  Int scratch;
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] == 1) rel.units.insert(i + 1);
    for (std::size_t j = i; j < n; ++j) {
      scratch = t[i] + t[j];
      lookup(scratch, rel.adds, i, j);
      scratch = t[i] * t[j];
      lookup(scratch, rel.muls, i, j);
    }
  }
  return rel;
}

// True iff y satisfies every relation of x (units only when requested).
inline bool is_relation_morphism(const Tuple& x, const Tuple& y, bool include_units) {
  if (x.size() != y.size())
    throw std::invalid_argument("is_relation_morphism: tuple lengths differ");
  RelationSet rel = relations_of(x);
  if (include_units) {
    for (auto i : rel.units)
      if (y[i - 1] != 1) return false;
  }
  for (const auto& [i, j, k] : rel.adds)
    if (y[i - 1] + y[j - 1] != y[k - 1]) return false;
  for (const auto& [i, j, k] : rel.muls)
    if (y[i - 1] * y[j - 1] != y[k - 1]) return false;
  return true;
}

// (x1, ..., x1, x2, ..., xn) with x1 repeated m-n+1 times.
inline Tuple pad_tuple(const Tuple& x, std::size_t m) {
  if (x.empty()) throw std::invalid_argument("pad_tuple: empty tuple");
  if (m < x.size())
    throw std::invalid_argument("pad_tuple: m=" + std::to_string(m) + " is below the tuple length " +
                                std::to_string(x.size()));
  Tuple out(m - x.size() + 1, x[0]);
  out.insert(out.end(), x.begin() + 1, x.end());
  return out;
}

}  // namespace dioph
