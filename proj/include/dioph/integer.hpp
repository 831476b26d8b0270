#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dioph {

using Int = mpz_class;

// An assignment (x_1, ..., x_n); index 0 holds x_1.
using Tuple = std::vector<Int>;

inline bool is_perfect_square(const Int& v) {
  return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

// floor(sqrt(v)) for v >= 0.
inline Int isqrt(const Int& v) {
  if (v < 0) throw std::domain_error("isqrt of a negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

// 2^(2^k)
inline Int pow2_pow2(unsigned k) {
  Int r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 1UL << k);
  return r;
}

inline Int pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline std::size_t decimal_digits(const Int& v) {
  if (v == 0) return 1;
  return Int(abs(v)).get_str().size();
}

// Strict signed decimal literal: optional sign followed by digits only.
inline Int parse_int(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  std::size_t end = text.size();
  while (end > pos && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view body = text.substr(pos, end - pos);
  std::size_t digits_from = 0;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) digits_from = 1;
  if (digits_from == body.size())
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  for (std::size_t i = digits_from; i < body.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(body[i])))
      throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  std::string s(body[0] == '+' ? body.substr(1) : body);
  return Int(s, 10);
}

}  // namespace dioph
