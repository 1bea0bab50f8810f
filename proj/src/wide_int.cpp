#include "crlab/wide_int.hpp"

#include <algorithm>
#include <limits>

namespace crlab {

std::string to_string(wide_int v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work on the unsigned magnitude so the minimum value round-trips.
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                   : static_cast<unsigned __int128>(v);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

wide_int checked_add(wide_int a, wide_int b) {
  wide_int r;
  if (__builtin_add_overflow(a, b, &r)) throw RangeError("128-bit addition overflow");
  return r;
}

wide_int checked_mul(wide_int a, wide_int b) {
  wide_int r;
  if (__builtin_mul_overflow(a, b, &r)) throw RangeError("128-bit multiplication overflow");
  return r;
}

wide_int checked_pow(wide_int base, unsigned exponent) {
  wide_int result = 1;
  while (exponent != 0) {
    if (exponent & 1u) result = checked_mul(result, base);
    exponent >>= 1;
    if (exponent != 0) base = checked_mul(base, base);
  }
  return result;
}

std::uint64_t checked_pow_u64(std::uint64_t base, unsigned exponent) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(result, base, &result))
      throw RangeError("64-bit power overflow");
  }
  return result;
}

std::uint64_t to_u64(wide_int v) {
  if (v < 0 || v > static_cast<wide_int>(std::numeric_limits<std::uint64_t>::max()))
    throw RangeError("value does not fit 64 bits: " + to_string(v));
  return static_cast<std::uint64_t>(v);
}

}  // namespace crlab
