#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cforge {

using Rational = mpq_class;

/// Parses "7/6", "-3", "2.75" or "1e-3" into an exact rational. Decimal
/// notation is converted digit by digit, never through a double.
Rational parse_rational(std::string_view text);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double value);

/// Rounds `value` to `digits` significant decimal digits and returns the
/// resulting decimal as an exact rational.
Rational rational_from_double_rounded(double value, int digits = 12);

/// "7/6" or "-1"; canonical form.
std::string to_string(const Rational& q);

/// "7/6 (≈ 1.16667)": exact fraction plus a 6-significant-digit decimal.
std::string format_fraction(const Rational& q);

/// Locale-independent shortest round-trip or fixed-precision formatting.
std::string format_double(double value, int significant_digits = 6);

}  // namespace cforge
