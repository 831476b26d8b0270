#pragma once

#include "dioph/integer.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace dioph::pell {

// x + y*sqrt(d), read as a candidate solution of x^2 - d*y^2 = -1.
struct PellPair {
  Int x;
  Int y;

  friend bool operator==(const PellPair& a, const PellPair& b) { return a.x == b.x && a.y == b.y; }
};

inline bool solves_negative_pell(const PellPair& p, const Int& d) {
  return p.x * p.x - d * p.y * p.y == -1;
}

namespace detail {

inline void require_negative_pell(const PellPair& p, const Int& d, const char* where) {
  if (!solves_negative_pell(p, d)) {
    throw std::domain_error(std::string(where) + ": (" + p.x.get_str() + ", " + p.y.get_str() +
                            ") does not solve x^2 - " + d.get_str() + "*y^2 = -1");
  }
}

inline void require_non_square(const Int& d) {
  if (d < 2 || is_perfect_square(d))
    throw std::domain_error("d=" + d.get_str() + " must be >= 2 and not a perfect square");
}

}  // namespace detail

// (x, y) -> (9x + 20y, 4x + 9y): multiplication by (2 + sqrt5)^2 = 9 + 4 sqrt5.
inline PellPair step_5(const PellPair& p) {
  detail::require_negative_pell(p, 5, "step_5");
  return {9 * p.x + 20 * p.y, 4 * p.x + 9 * p.y};
}

// First `count` positive solutions of x^2 - 5y^2 = -1, starting from (2, 1).
inline std::vector<PellPair> enumerate_5(std::size_t count) {
  if (count == 0) throw std::invalid_argument("enumerate_5: count must be >= 1");
  std::vector<PellPair> out;
  out.reserve(count);
  out.push_back({2, 1});
  while (out.size() < count) out.push_back(step_5(out.back()));
  return out;
}

// Product in Z[sqrt d].
inline PellPair surd_mul(const PellPair& a, const PellPair& b, const Int& d) {
  detail::require_non_square(d);
  return {a.x * b.x + d * a.y * b.y, a.x * b.y + a.y * b.x};
}

// (x + y sqrt d)^exp for odd exp, by square-and-multiply. Odd powers of a
// solution of x^2 - d y^2 = -1 solve it again.
inline PellPair surd_pow_odd(const PellPair& p, unsigned long exp, const Int& d) {
  if (exp % 2 == 0) throw std::invalid_argument("surd_pow_odd: exponent must be odd");
  detail::require_non_square(d);
  detail::require_negative_pell(p, d, "surd_pow_odd");
  PellPair result{1, 0};
  PellPair base = p;
  while (exp != 0) {
    if (exp & 1UL) result = surd_mul(result, base, d);
    exp >>= 1;
    if (exp != 0) base = surd_mul(base, base, d);
  }
  return result;
}

// Indices k in 1..limit with modulus | v(k), where (u(k), v(k)) is the k-th
// positive solution of x^2 - 5y^2 = -1 and k = 1 is (2, 1).
inline std::vector<std::size_t> find_divisible_index(const Int& modulus, std::size_t limit) {
  if (modulus <= 0) throw std::invalid_argument("find_divisible_index: modulus must be positive");
  if (limit == 0) throw std::invalid_argument("find_divisible_index: limit must be >= 1");
  std::vector<std::size_t> hits;
  PellPair p{2, 1};
  for (std::size_t k = 1; k <= limit; ++k) {
    if (k > 1) p = {9 * p.x + 20 * p.y, 4 * p.x + 9 * p.y};
    if (mpz_divisible_p(p.y.get_mpz_t(), modulus.get_mpz_t())) hits.push_back(k);
  }
  return hits;
}

inline const Int& five_pow9() {
  static const Int v = pow(Int(5), 9);
  return v;
}

// The 313th solution of x^2 - 5y^2 = -1 is the first whose y is divisible by
// 625; dividing y by 625 gives the least positive solution of x^2 - 5^9 y^2 = -1.
inline constexpr std::size_t kFundamentalIndex = 313;

inline PellPair fundamental_5pow9() {
  PellPair p = enumerate_5(kFundamentalIndex).back();
  Int q, r;
  mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), p.y.get_mpz_t(), 625);
  if (r != 0) throw std::logic_error("fundamental_5pow9: 625 does not divide v(313)");
  PellPair f{p.x, q};
  if (!solves_negative_pell(f, five_pow9()))
    throw std::logic_error("fundamental_5pow9: pair fails x^2 - 5^9 y^2 = -1");
  return f;
}

}  // namespace dioph::pell
