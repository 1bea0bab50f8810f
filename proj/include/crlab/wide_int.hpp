#pragma once

#include <cstdint>
#include <string>

#include "crlab/errors.hpp"

namespace crlab {

/// Signed 128-bit integer used for every exact intermediate value.
using wide_int = __int128;

std::string to_string(wide_int v);

/// Checked arithmetic. Each throws RangeError instead of wrapping.
wide_int checked_add(wide_int a, wide_int b);
wide_int checked_mul(wide_int a, wide_int b);
wide_int checked_pow(wide_int base, unsigned exponent);

/// base^exponent as an unsigned 64-bit value, or RangeError.
std::uint64_t checked_pow_u64(std::uint64_t base, unsigned exponent);

/// Narrowing to uint64 with a range check.
std::uint64_t to_u64(wide_int v);

inline double to_double(wide_int v) { return static_cast<double>(v); }

}  // namespace crlab
