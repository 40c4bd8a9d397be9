#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace psipoint {

/// Exact rational scalar. GMP keeps it canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den reduced to lowest terms (den != 0).
Rational make_rational(const Integer& num, const Integer& den);

/// "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& r);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on bad input or
/// zero denominator.
Rational parse_rational(std::string_view text);

Integer factorial(unsigned n);

/// (2k-1)!! for k >= 0 with (-1)!! = 1; equivalently `double_factorial(2k-1)`.
Integer double_factorial(int n);

}  // namespace psipoint
