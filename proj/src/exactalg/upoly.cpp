#include "dynsml/exactalg/upoly.hpp"

#include <algorithm>
#include <cstdlib>

#include "dynsml/error.hpp"

namespace dynsml::exactalg::upoly {

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const QPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

QPoly from_integer(const ZPoly& f) {
  QPoly out(f.begin(), f.end());
  trim(out);
  return out;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly derivative(const QPoly& f) {
  QPoly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * static_cast<unsigned long>(i));
  trim(out);
  return out;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& quotient, QPoly& remainder) {
  const int db = degree(b);
  if (db < 0) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
  remainder = a;
  trim(remainder);
  quotient.assign(std::max<int>(0, degree(remainder) - db + 1), Rational(0));
  const Rational lead = b[db];
  while (degree(remainder) >= db) {
    const int dr = degree(remainder);
    const Rational factor = remainder[dr] / lead;
    quotient[dr - db] = factor;
    for (int i = 0; i <= db; ++i) remainder[dr - db + i] -= factor * b[i];
    trim(remainder);
  }
  trim(quotient);
}

QPoly inverse_mod(const QPoly& a, const QPoly& m) {
  // Extended Euclid on (m, a) tracking the coefficient of a.
  QPoly r0 = m, r1, s0, s1{Rational(1)};
  QPoly q, rem;
  divmod(a, m, q, r1);
  while (degree(r1) > 0) {
    divmod(r0, r1, q, rem);
    QPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (degree(r1) < 0) fail(ErrorCode::InvalidArgument, "element is not invertible modulo the polynomial");
  for (auto& c : s1) c /= r1[0];
  divmod(s1, m, q, rem);
  return rem;
}

Rational resultant(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  Rational scale = 1;
  while (true) {
    const int m = degree(a);
    const int n = degree(b);
    if (m == 0) {
      Rational out;
      mpz_pow_ui(out.get_num_mpz_t(), a[0].get_num_mpz_t(), n);
      mpz_pow_ui(out.get_den_mpz_t(), a[0].get_den_mpz_t(), n);
      out.canonicalize();
      return scale * out;
    }
    if (n == 0) {
      Rational out;
      mpz_pow_ui(out.get_num_mpz_t(), b[0].get_num_mpz_t(), m);
      mpz_pow_ui(out.get_den_mpz_t(), b[0].get_den_mpz_t(), m);
      out.canonicalize();
      return scale * out;
    }
    QPoly q, r;
    divmod(a, b, q, r);
    if (r.empty()) return 0;
    const int k = degree(r);
    Rational lead_pow = 1;
    for (int i = 0; i < m - k; ++i) lead_pow *= b[n];
    if ((static_cast<long>(m) * n) % 2 == 1) lead_pow = -lead_pow;
    scale *= lead_pow;
    a = std::move(b);
    b = std::move(r);
  }
}

Integer evaluate(const ZPoly& f, const Integer& x) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ZPoly derivative(const ZPoly& f) {
  ZPoly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * static_cast<unsigned long>(i));
  return out;
}

Integer discriminant(const ZPoly& f) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) fail(ErrorCode::InvalidArgument, "discriminant needs degree >= 1");
  if (d == 1) return 1;
  const Rational res = resultant(from_integer(f), from_integer(derivative(f)));
  Rational disc = res / Rational(f.back());
  if ((static_cast<long>(d) * (d - 1) / 2) % 2 == 1) disc = -disc;
  return disc.get_num();
}

namespace {

using u64 = std::uint64_t;

void ftrim(FPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int fdeg(const FPoly& f) { return static_cast<int>(f.size()) - 1; }

u64 powmod(u64 a, u64 e, u64 l) {
  u64 r = 1 % l;
  a %= l;
  while (e) {
    if (e & 1) r = r * a % l;
    a = a * a % l;
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 l) { return powmod(a, l - 2, l); }

FPoly fmod_poly(FPoly a, const FPoly& b, u64 l) {
  ftrim(a);
  const int db = fdeg(b);
  const u64 inv_lead = invmod(b.back(), l);
  while (fdeg(a) >= db) {
    const int da = fdeg(a);
    const u64 factor = a.back() * inv_lead % l;
    for (int i = 0; i <= db; ++i) a[da - db + i] = (a[da - db + i] + (l - factor) * b[i]) % l;
    ftrim(a);
  }
  return a;
}

FPoly fdiv_poly(FPoly a, const FPoly& b, u64 l) {
  const int db = fdeg(b);
  FPoly quotient(std::max(0, fdeg(a) - db + 1), 0);
  const u64 inv_lead = invmod(b.back(), l);
  while (fdeg(a) >= db) {
    const int da = fdeg(a);
    const u64 factor = a.back() * inv_lead % l;
    quotient[da - db] = factor;
    for (int i = 0; i <= db; ++i) a[da - db + i] = (a[da - db + i] + (l - factor) * b[i]) % l;
    ftrim(a);
  }
  return quotient;
}

FPoly fmulmod(const FPoly& a, const FPoly& b, const FPoly& m, u64 l) {
  if (a.empty() || b.empty()) return {};
  FPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % l;
  return fmod_poly(std::move(out), m, l);
}

FPoly fgcd(FPoly a, FPoly b, u64 l) {
  ftrim(a);
  ftrim(b);
  while (!b.empty()) {
    FPoly r = fmod_poly(a, b, l);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 inv = invmod(a.back(), l);
    for (auto& c : a) c = c * inv % l;
  }
  return a;
}

std::vector<u64> small_primes(std::size_t count) {
  std::vector<u64> out;
  for (u64 n = 2; out.size() < count; ++n) {
    bool prime = true;
    for (u64 d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(n);
  }
  return out;
}

bool has_integer_root(const ZPoly& f, bool& decided) {
  // Monic integer polynomial: rational roots are integers dividing c_0.
  Integer c0 = abs(f[0]);
  decided = false;
  if (c0 > Integer("1000000000000")) return false;
  decided = true;
  const unsigned long n = c0.get_ui();
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    for (unsigned long cand : {d, n / d}) {
      if (evaluate(f, Integer(cand)) == 0 || evaluate(f, Integer(-Integer(cand))) == 0) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> factor_degrees_mod(const ZPoly& f, std::uint64_t l) {
  FPoly g;
  for (const auto& c : f) {
    Integer r = c % Integer(static_cast<unsigned long>(l));
    if (r < 0) r += static_cast<unsigned long>(l);
    g.push_back(r.get_ui());
  }
  ftrim(g);
  std::vector<int> degrees;
  FPoly x{0, 1};
  FPoly h = fmod_poly(x, g, l);
  for (int i = 1; fdeg(g) >= 2 * i; ++i) {
    // h = x^(l^i) mod g
    FPoly base = h;
    FPoly acc{1};
    for (u64 e = l; e; e >>= 1) {
      if (e & 1) acc = fmulmod(acc, base, g, l);
      base = fmulmod(base, base, g, l);
    }
    h = acc;
    FPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + l - 1) % l;
    ftrim(diff);
    FPoly d = fgcd(g, diff, l);
    if (fdeg(d) > 0) {
      for (int k = 0; k < fdeg(d) / i; ++k) degrees.push_back(i);
      g = fdiv_poly(g, d, l);
      h = fmod_poly(h, g, l);
    }
  }
  if (fdeg(g) > 0) degrees.push_back(fdeg(g));
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

Irreducibility irreducibility_screen(const ZPoly& f) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) fail(ErrorCode::InvalidArgument, "irreducibility of a constant");
  if (d == 1) return Irreducibility::Irreducible;
  if (f[0] == 0) return Irreducibility::Reducible;

  std::vector<bool> possible(d, true);  // possible[k]: a factor of degree k may exist
  possible[0] = false;
  bool root_decided = false;
  if (has_integer_root(f, root_decided)) return Irreducibility::Reducible;
  if (root_decided) {
    possible[1] = false;
    possible[d - 1] = false;
  }
  const Integer disc = discriminant(f);
  for (u64 l : small_primes(80)) {
    if (disc % Integer(static_cast<unsigned long>(l)) == 0) continue;
    const auto degrees = factor_degrees_mod(f, l);
    std::vector<bool> sums(d + 1, false);
    sums[0] = true;
    for (int deg : degrees)
      for (int s = d; s >= deg; --s)
        if (sums[s - deg]) sums[s] = true;
    bool any = false;
    for (int k = 1; k < d; ++k) {
      possible[k] = possible[k] && sums[k];
      any = any || possible[k];
    }
    if (!any) return Irreducibility::Irreducible;
  }
  return Irreducibility::Inconclusive;
}

}  // namespace dynsml::exactalg::upoly
