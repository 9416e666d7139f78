#pragma once

#include <string>

namespace v2n {

/// Shortest decimal representation that round-trips to the same double.
/// Locale independent; infinities print as `inf`/`-inf`, NaN as `NA`.
std::string format_double(double value);

/// Fixed-point formatting with `digits` decimals (locale independent).
std::string format_fixed(double value, int digits);

} // namespace v2n
