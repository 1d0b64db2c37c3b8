#pragma once

#include <cstdint>
#include <vector>

#include "dynsml/exactalg/rational.hpp"

// Dense univariate polynomials, coefficient vectors stored low degree first.
// Only what the number-field layer needs: arithmetic over Q, the resultant,
// and a degree-pattern irreducibility screen through F_l.
namespace dynsml::exactalg::upoly {

using QPoly = std::vector<Rational>;
using ZPoly = std::vector<Integer>;
using FPoly = std::vector<std::uint64_t>;

void trim(QPoly& f);
int degree(const QPoly& f);  // -1 for the zero polynomial

QPoly from_integer(const ZPoly& f);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& f);
// Quotient and remainder of a by b (b nonzero).
void divmod(const QPoly& a, const QPoly& b, QPoly& quotient, QPoly& remainder);
// Returns u with u*a == 1 mod m; requires gcd(a, m) = 1.
QPoly inverse_mod(const QPoly& a, const QPoly& m);

Rational resultant(QPoly a, QPoly b);
// Discriminant of a monic integer polynomial of degree >= 1.
Integer discriminant(const ZPoly& f);

Integer evaluate(const ZPoly& f, const Integer& x);
ZPoly derivative(const ZPoly& f);

// Degrees of the irreducible factors of f mod l, for f squarefree mod l.
std::vector<int> factor_degrees_mod(const ZPoly& f, std::uint64_t l);

enum class Irreducibility { Irreducible, Reducible, Inconclusive };

// Integer-root test plus intersection of factor-degree patterns over several
// small primes. Never reports Irreducible unless that is proven.
Irreducibility irreducibility_screen(const ZPoly& f);

}  // namespace dynsml::exactalg::upoly
