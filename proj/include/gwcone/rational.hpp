#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gwcone {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" into a canonical rational; throws ParseError.
Rational parse_rational(std::string_view text);

/// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& value);

inline std::string numerator_string(const Rational& value) { return value.get_num().get_str(); }
inline std::string denominator_string(const Rational& value) { return value.get_den().get_str(); }

Rational factorial(int n);
Rational binomial(int n, int k);

}  // namespace gwcone
