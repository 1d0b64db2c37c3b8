#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dynsml::exactalg {

using Integer = mpz_class;
// mpq_class keeps gcd(num, den) = 1 and den > 0 after canonicalize().
using Rational = mpq_class;

// Accepts "a", "-a", "a/b"; whitespace around the tokens is ignored.
// Throws Error(ParseError) on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

Integer lcm(const Integer& a, const Integer& b);

// p-adic valuation of a nonzero integer (p >= 2).
int valuation(const Integer& z, unsigned long p);

}  // namespace dynsml::exactalg
