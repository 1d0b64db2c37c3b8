#include "dynsml/padic/padic.hpp"

#include <climits>

#include "dynsml/error.hpp"

namespace dynsml::padic {

namespace {

const char* const kTwoAdicObstruction =
    "There does not exist a 2-adic analytic function f with f(0) = 1 and f(z+1) = H(f(z)) for "
    "H(x) = -x, even though H(1) = 1 and H'(x) = 1 mod 2; analytic arcs are only "
    "guaranteed for primes p >= 5";

}  // namespace

long ValBound::floor() const { return kind == Kind::Infinite ? LONG_MAX : v; }

std::string ValBound::to_string() const {
  switch (kind) {
    case Kind::Exact:
      return std::to_string(v);
    case Kind::AtLeast:
      return ">=" + std::to_string(v);
    case Kind::Infinite:
      break;
  }
  return "inf";
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  Integer z(n);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

PadicContext::PadicContext(unsigned long p, long N) : p_(p), N_(N) {
  if (p == 2)
    fail(ErrorCode::UnsupportedPrime, std::string("p = 2 is not supported. ") + kTwoAdicObstruction);
  if (p == 3)
    fail(ErrorCode::UnsupportedPrime,
         std::string("p = 3 is not supported: the analytic arc construction is only established for "
                     "p >= 5, and whether it can fail for p = 3 is open (no counterexample is known). "
                     "For comparison, p = 2 genuinely fails: ") +
             kTwoAdicObstruction);
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  if (N < 1) fail(ErrorCode::InvalidArgument, "precision N must be >= 1");
  mpz_ui_pow_ui(modulus_.get_mpz_t(), p, static_cast<unsigned long>(N));
}

Integer PadicContext::reduce(const Integer& z) const {
  Integer r;
  mpz_mod(r.get_mpz_t(), z.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

PadicInt PadicContext::from_integer(const Integer& z) const { return PadicInt{reduce(z), z == 0}; }

PadicInt PadicContext::embed_rational(const Rational& r) const {
  if (r == 0) return zero();
  const Integer& den = r.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), p_))
    fail(ErrorCode::DenominatorNotUnit, "p = " + std::to_string(p_) + " divides the denominator of " +
                                            exactalg::to_string(r));
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t());
  return PadicInt{reduce(r.get_num() * inv), false};
}

PadicInt PadicContext::add(const PadicInt& a, const PadicInt& b) const {
  return PadicInt{reduce(a.residue + b.residue), a.known_exact_zero && b.known_exact_zero};
}

PadicInt PadicContext::sub(const PadicInt& a, const PadicInt& b) const {
  return PadicInt{reduce(a.residue - b.residue), a.known_exact_zero && b.known_exact_zero};
}

PadicInt PadicContext::mul(const PadicInt& a, const PadicInt& b) const {
  return PadicInt{reduce(a.residue * b.residue), a.known_exact_zero || b.known_exact_zero};
}

PadicInt PadicContext::neg(const PadicInt& a) const { return PadicInt{reduce(-a.residue), a.known_exact_zero}; }

PadicInt PadicContext::inverse(const PadicInt& a) const {
  if (mpz_divisible_ui_p(a.residue.get_mpz_t(), p_))
    fail(ErrorCode::NonUnitInverse, "cannot invert a non-unit modulo p^N");
  Integer inv;
  mpz_invert(inv.get_mpz_t(), a.residue.get_mpz_t(), modulus_.get_mpz_t());
  return PadicInt{inv, false};
}

PadicInt PadicContext::pow(const PadicInt& a, unsigned long e) const {
  if (e == 0) return one();
  Integer r;
  mpz_powm_ui(r.get_mpz_t(), a.residue.get_mpz_t(), e, modulus_.get_mpz_t());
  return PadicInt{r, a.known_exact_zero};
}

ValBound PadicContext::valuation(const PadicInt& a) const {
  if (a.known_exact_zero) return ValBound::infinite();
  if (a.residue == 0) return ValBound::at_least(N_);
  return ValBound::exact(static_cast<long>(mpz_remove(Integer().get_mpz_t(), a.residue.get_mpz_t(),
                                                      Integer(p_).get_mpz_t())));
}

PadicInt PadicContext::truncate(const PadicInt& a, long k) const {
  Integer m;
  mpz_ui_pow_ui(m.get_mpz_t(), p_, static_cast<unsigned long>(k));
  Integer r;
  mpz_mod(r.get_mpz_t(), a.residue.get_mpz_t(), m.get_mpz_t());
  return PadicInt{r, a.known_exact_zero};
}

PadicInt hensel_root(const exactalg::upoly::ZPoly& f, const Integer& r0, const PadicContext& ctx) {
  const Integer p(ctx.p());
  const auto df = exactalg::upoly::derivative(f);
  Integer fr = exactalg::upoly::evaluate(f, r0), dfr = exactalg::upoly::evaluate(df, r0);
  if (mpz_divisible_p(fr.get_mpz_t(), p.get_mpz_t()) == 0)
    fail(ErrorCode::NotASimpleRoot, "f(r0) is not divisible by p");
  if (mpz_divisible_p(dfr.get_mpz_t(), p.get_mpz_t()) != 0)
    fail(ErrorCode::NotASimpleRoot, "f'(r0) is divisible by p");
  Integer r;
  mpz_mod(r.get_mpz_t(), r0.get_mpz_t(), p.get_mpz_t());
  long prec = 1;
  while (prec < ctx.N()) {
    prec = std::min(2 * prec, ctx.N());
    Integer m;
    mpz_ui_pow_ui(m.get_mpz_t(), ctx.p(), static_cast<unsigned long>(prec));
    Integer num = exactalg::upoly::evaluate(f, r), den = exactalg::upoly::evaluate(df, r), inv;
    mpz_mod(den.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    r -= num * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  }
  return PadicInt{r, false};
}

long vp_factorial(unsigned long k, unsigned long p) {
  unsigned long digits = 0;
  for (unsigned long t = k; t > 0; t /= p) digits += t % p;
  return static_cast<long>((k - digits) / (p - 1));
}

long valuation_capped(const Integer& z, unsigned long p, long cap) {
  if (z == 0) return cap;
  Integer rest;
  const long v = static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), Integer(p).get_mpz_t()));
  return std::min(v, cap);
}

}  // namespace dynsml::padic
