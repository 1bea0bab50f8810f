#pragma once

#include <string>

namespace crlab {

/// printf %.{digits}g; non-finite values become "null" so JSON stays valid.
std::string format_float(double v, int digits = 17);

/// JSON string literal with escaping.
std::string json_quote(const std::string& s);

}  // namespace crlab
