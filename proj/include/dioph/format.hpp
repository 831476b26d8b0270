#pragma once

#include "dioph/integer.hpp"

#include <stdexcept>
#include <string>

namespace dioph {

// Decimal scientific notation of an exact integer, e.g. 2^2048 at 10
// significant digits is "3.231700607e616". The mantissa is rounded half-up
// from the exact digit string; the exponent is floor(log10 |v|).
inline std::string sci_notation(const Int& v, unsigned sig_digits) {
  if (sig_digits == 0) throw std::invalid_argument("sig_digits must be >= 1");
  if (v == 0) return "0.0e0";

  std::string digits = Int(abs(v)).get_str();
  std::size_t exponent = digits.size() - 1;

  std::string mantissa;
  if (digits.size() <= sig_digits) {
    mantissa = digits + std::string(sig_digits - digits.size(), '0');
  } else {
    mantissa = digits.substr(0, sig_digits);
    if (digits[sig_digits] >= '5') {
      std::size_t pos = mantissa.size();
      while (pos > 0) {
        --pos;
        if (mantissa[pos] == '9') {
          mantissa[pos] = '0';
        } else {
          ++mantissa[pos];
          break;
        }
      }
      if (mantissa[0] == '0') {  // carried out of the leading digit: 99.. -> 10..
        mantissa.insert(mantissa.begin(), '1');
        mantissa.pop_back();
        ++exponent;
      }
    }
  }

  std::string out = v < 0 ? "-" : "";
  out += mantissa[0];
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  out += "e" + std::to_string(exponent);
  return out;
}

}  // namespace dioph
