#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace thetadet {

// GMP rationals are kept canonical (reduced, positive denominator) by every
// constructor used in this library.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const std::string& num, const std::string& den);

// Integer power; negative exponents require a nonzero base.
Rational pow(const Rational& base, int exponent);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace thetadet
