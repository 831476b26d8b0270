#pragma once

#include "dioph/compiler.hpp"
#include "dioph/pell.hpp"
#include "dioph/system.hpp"

#include <stdexcept>
#include <string>

namespace dioph {

// ---- systems with only huge solutions ------------------------------------

// Eleven equations saying x10^2 - 5*x8^2 = -1 with 625 | x8, then
// x_i * x_i = x_{i+1} for i = 12..n-1.
inline System theorem1_system(std::size_t n) {
  if (n < 12) throw std::invalid_argument("theorem1_system: n must be >= 12");
  System s(n);
  s.insert(Equation::unit(1));
  s.insert(Equation::add(1, 1, 2));
  s.insert(Equation::add(2, 2, 3));
  s.insert(Equation::add(1, 3, 4));
  s.insert(Equation::mul(4, 4, 5));
  s.insert(Equation::mul(5, 5, 6));
  s.insert(Equation::mul(6, 7, 8));
  s.insert(Equation::mul(8, 8, 9));
  s.insert(Equation::mul(10, 10, 11));
  s.insert(Equation::add(11, 1, 12));
  s.insert(Equation::mul(4, 9, 12));
  for (std::size_t i = 12; i < n; ++i) s.insert(Equation::mul(i, i, i + 1));
  return s;
}

inline const pell::PellPair& cached_fundamental_5pow9() {
  static const pell::PellPair f = pell::fundamental_5pow9();
  return f;
}

// A solution built from the (2*lift - 1)-th power of the least positive
// solution (U, V) of U^2 - 5^9 V^2 = -1: x7 = V, x10 = U.
inline Tuple theorem1_witness(std::size_t n, unsigned long lift = 1) {
  if (n < 12) throw std::invalid_argument("theorem1_witness: n must be >= 12");
  if (lift == 0) throw std::invalid_argument("theorem1_witness: lift must be >= 1");
  pell::PellPair uv = pell::surd_pow_odd(cached_fundamental_5pow9(), 2 * lift - 1, pell::five_pow9());
  Tuple x(n);
  x[0] = 1;
  x[1] = 2;
  x[2] = 4;
  x[3] = 5;
  x[4] = 25;
  x[5] = 625;
  x[6] = uv.y;
  x[7] = 625 * uv.y;
  x[8] = x[7] * x[7];
  x[9] = uv.x;
  x[10] = uv.x * uv.x;
  x[11] = x[10] + 1;
  for (std::size_t i = 12; i < n; ++i) x[i] = x[i - 1] * x[i - 1];
  return x;
}

// ---- extremal tuples ------------------------------------------------------

// (2^(2^(n-1)), 2^(2^(n-2)), ..., 16, 4, 2)
inline Tuple doubling_tuple(std::size_t n) {
  if (n < 2) throw std::invalid_argument("doubling_tuple: n must be >= 2");
  Tuple t;
  for (std::size_t i = 1; i <= n; ++i) t.push_back(pow2_pow2(static_cast<unsigned>(n - i)));
  return t;
}

// (2^(2^(n-2)), ..., 4, 2, 1)
inline Tuple property4_tuple(std::size_t n) {
  if (n < 2) throw std::invalid_argument("property4_tuple: n must be >= 2");
  Tuple t;
  for (std::size_t i = 2; i <= n; ++i) t.push_back(pow2_pow2(static_cast<unsigned>(n - i)));
  t.emplace_back(1);
  return t;
}

// ---- systems pinning x1 = f(n) -------------------------------------------

// Variable layout of the n-variable system: Psi occupies 1..s, then the
// padding units z, the chain t_1..t_h with h = floor(n/2), then w, y, u, v.
struct Theorem2Layout {
  std::size_t s = 0;
  std::size_t m_f = 0;
  std::size_t n = 0;
  std::size_t padding_count = 0;
  std::size_t padding_first = 0;
  std::size_t chain_length = 0;
  std::size_t chain_first = 0;
  std::size_t w = 0, y = 0, u = 0, v = 0;

  std::size_t z(std::size_t i) const { return padding_first + i - 1; }
  std::size_t t(std::size_t i) const { return chain_first + i - 1; }
};

struct Theorem2Plan {
  CompiledSystem psi;
  Theorem2Layout layout;
  std::size_t r = 0;  // arity of W
};

inline Theorem2Layout theorem2_layout_for(std::size_t s, std::size_t n) {
  Theorem2Layout l;
  l.s = s;
  l.m_f = 8 + 2 * s;
  l.n = n;
  if (n < l.m_f) {
    throw std::invalid_argument("theorem2: n=" + std::to_string(n) + " is below m(f)=" + std::to_string(l.m_f));
  }
  l.chain_length = n / 2;
  l.padding_count = n - l.chain_length - 4 - s;
  l.padding_first = s + 1;
  l.chain_first = l.padding_first + l.padding_count;
  l.w = l.chain_first + l.chain_length;
  l.y = l.w + 1;
  l.u = l.w + 2;
  l.v = l.w + 3;
  return l;
}

// W(x1, x2, x3..xr): x1 = f(x2) iff W = 0 for some nonnegative x3..xr.
// Psi is the compact lowering of the four-square integerization of W.
inline Theorem2Plan plan_theorem2(const Polynomial& w, std::size_t n) {
  Theorem2Plan plan{compile_compact(integerize_nonneg(w), Variant::Halved), {}, w.arity()};
  plan.layout = theorem2_layout_for(plan.psi.n(), n);
  return plan;
}

inline Theorem2Layout theorem2_layout(const Polynomial& w, std::size_t n) { return plan_theorem2(w, n).layout; }

inline System theorem2_system(const Theorem2Plan& plan) {
  const auto& l = plan.layout;
  System s(l.n);
  for (const auto& e : plan.psi.system) s.insert(e);
  for (std::size_t i = 1; i <= l.padding_count; ++i) s.insert(Equation::unit(l.z(i)));
  s.insert(Equation::unit(l.t(1)));
  if (l.chain_length >= 2) s.insert(Equation::add(l.t(1), l.t(1), l.t(2)));
  for (std::size_t i = 2; i < l.chain_length; ++i) s.insert(Equation::add(l.t(i), l.t(1), l.t(i + 1)));
  s.insert(Equation::add(l.t(l.chain_length), l.t(l.chain_length), l.w));
  s.insert(Equation::add(l.w, l.y, 2));
  if (l.n % 2 == 0) {
    s.insert(Equation::add(l.y, l.y, l.y));
  } else {
    s.insert(Equation::unit(l.y));
  }
  s.insert(Equation::add(l.u, l.u, l.v));
  return s;
}

// Every integer solution has x_1 = f(n); u is free, so there are infinitely
// many.
inline System theorem2_system(const Polynomial& w, std::size_t n) { return theorem2_system(plan_theorem2(w, n)); }

// Expected equation count: Psi, padding, h chain equations, then
// t_h + t_h = w, w + y = x2, the parity equation and u + u = v.
inline std::size_t theorem2_equation_count(const Theorem2Plan& plan) {
  return plan.psi.system.size() + plan.layout.padding_count + plan.layout.chain_length + 4;
}

// Completes a nonnegative (x1..xr) with W = 0 and x2 = n to a solution.
inline Tuple theorem2_witness(const Theorem2Plan& plan, const Tuple& nonneg_witness) {
  const auto& l = plan.layout;
  const std::size_t r = plan.r;
  if (nonneg_witness.size() != r)
    throw std::invalid_argument("theorem2_witness: expected " + std::to_string(r) + " coordinates");
  for (const auto& c : nonneg_witness)
    if (c < 0) throw std::invalid_argument("theorem2_witness: witness has a negative entry");
  if (nonneg_witness[1] != Int(static_cast<unsigned long>(l.n)))
    throw std::invalid_argument("theorem2_witness: x2 must equal n=" + std::to_string(l.n));

  Tuple point(5 * r);
  for (std::size_t i = 1; i <= r; ++i) {
    point[i - 1] = nonneg_witness[i - 1];
    auto sq = four_square(nonneg_witness[i - 1]);
    for (std::size_t k = 1; k <= 4; ++k) point[square_slot(r, i, k) - 1] = sq[k - 1];
  }
  if (plan.psi.meaning[plan.psi.q - 1](point) != 0)
    throw std::invalid_argument("theorem2_witness: W does not vanish at the witness");

  Tuple full = extend_solution(plan.psi, point);
  full.resize(l.n);
  for (std::size_t i = 1; i <= l.padding_count; ++i) full[l.z(i) - 1] = 1;
  for (std::size_t i = 1; i <= l.chain_length; ++i) full[l.t(i) - 1] = static_cast<unsigned long>(i);
  full[l.w - 1] = static_cast<unsigned long>(2 * l.chain_length);
  full[l.y - 1] = static_cast<unsigned long>(l.n % 2);
  full[l.u - 1] = 0;
  full[l.v - 1] = 0;
  if (!check_solution(theorem2_system(plan), full))
    throw std::logic_error("theorem2_witness: assembled tuple does not solve the system");
  return full;
}

inline Tuple theorem2_witness(const Polynomial& w, std::size_t n, const Tuple& nonneg_witness) {
  return theorem2_witness(plan_theorem2(w, n), nonneg_witness);
}

}  // namespace dioph
