#pragma once

#include <string>

#include "dynsml/exactalg/rational.hpp"
#include "dynsml/exactalg/upoly.hpp"

namespace dynsml::padic {

using exactalg::Integer;
using exactalg::Rational;

// Lower bound on a p-adic valuation as far as precision N can tell.
struct ValBound {
  enum class Kind { Exact, AtLeast, Infinite };
  Kind kind = Kind::Infinite;
  long v = 0;  // the valuation (Exact) or the floor (AtLeast)

  static ValBound exact(long v) { return {Kind::Exact, v}; }
  static ValBound at_least(long v) { return {Kind::AtLeast, v}; }
  static ValBound infinite() { return {Kind::Infinite, 0}; }

  bool is_exact() const { return kind == Kind::Exact; }
  // True when the value is certainly >= bound.
  bool satisfies(long bound) const { return kind == Kind::Infinite || v >= bound; }
  // Largest integer we may claim as a lower bound (LONG_MAX for infinite).
  long floor() const;

  bool operator==(const ValBound&) const = default;
  std::string to_string() const;  // "3", ">=64", "inf"
};

// Residue modulo p^N. known_exact_zero records that the value came from an
// exact computation that produced 0, which is stronger than residue == 0.
struct PadicInt {
  Integer residue;
  bool known_exact_zero = false;

  bool operator==(const PadicInt& o) const { return residue == o.residue && known_exact_zero == o.known_exact_zero; }
};

bool is_prime(unsigned long n);

class PadicContext {
 public:
  // Throws UnsupportedPrime for p = 2, 3 and InvalidArgument for a non-prime p
  // or N < 1.
  PadicContext(unsigned long p, long N);

  unsigned long p() const { return p_; }
  long N() const { return N_; }
  const Integer& modulus() const { return modulus_; }

  // Same prime, different precision (N' >= 1).
  PadicContext with_precision(long N) const { return PadicContext(p_, N); }

  Integer reduce(const Integer& z) const;
  PadicInt from_integer(const Integer& z) const;
  PadicInt zero() const { return PadicInt{Integer(0), true}; }
  PadicInt one() const { return PadicInt{Integer(1), false}; }

  // Throws DenominatorNotUnit when p divides the denominator.
  PadicInt embed_rational(const Rational& r) const;

  PadicInt add(const PadicInt& a, const PadicInt& b) const;
  PadicInt sub(const PadicInt& a, const PadicInt& b) const;
  PadicInt mul(const PadicInt& a, const PadicInt& b) const;
  PadicInt neg(const PadicInt& a) const;
  // Throws NonUnitInverse when v(a) > 0.
  PadicInt inverse(const PadicInt& a) const;
  PadicInt pow(const PadicInt& a, unsigned long e) const;

  ValBound valuation(const PadicInt& a) const;

  // Residue reduced to a coarser precision k <= N (flags preserved).
  PadicInt truncate(const PadicInt& a, long k) const;

 private:
  unsigned long p_;
  long N_;
  Integer modulus_;
};

// Newton lift of a simple root r0 mod p of f to a root mod p^N.
// Throws NotASimpleRoot when f(r0) != 0 or f'(r0) == 0 mod p.
PadicInt hensel_root(const exactalg::upoly::ZPoly& f, const Integer& r0, const PadicContext& ctx);

// v_p(k!) = (k - s_p(k)) / (p - 1).
long vp_factorial(unsigned long k, unsigned long p);

// v_p(z) for z != 0 (Integer), at most `cap` for z == 0.
long valuation_capped(const Integer& z, unsigned long p, long cap);

}  // namespace dynsml::padic
