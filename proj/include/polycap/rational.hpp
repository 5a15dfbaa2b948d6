#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace polycap {

using Rational = mpq_class;
using Complex = std::complex<double>;

enum class ScalarMode { exact, floating };

/// Parses "7", "-3/4", "0.125", "1e-3", "2.5E+2" into an exact rational.
/// Throws InputError on anything else.
Rational parse_rational(std::string_view text);

/// Exact conversion: every finite double is a dyadic rational.
Rational to_rational(double value);

std::string to_string(const Rational& value);

/// Shortest round-trip decimal for a double.
std::string to_decimal_string(double value);

inline double to_double(const Rational& value) { return value.get_d(); }

Rational factorial(int n);

/// Integer power with 0^0 = 1.
Rational pow(const Rational& base, int exponent);

}  // namespace polycap
