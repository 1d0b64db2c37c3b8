#pragma once

// Integer polynomials with known zero structure in Z_p, for checking the
// Strassman bound and root isolation.

#include <set>

#include "dynsml/strassman/strassman.hpp"
#include "support.hpp"

namespace testsupport {

struct PlantedCase {
  unsigned long p = 5;
  IntPoly f;                // unit * prod (z - r) [* (z^2 - d)], low degree first
  std::set<long> integer_roots;
  long other_roots = 0;     // Z_p roots that are not integers (from z^2 - d)
};

inline PlantedCase make_planted(std::mt19937_64& g, int t) {
  using dynsml::exactalg::Integer;
  PlantedCase c;
  const unsigned long primes[] = {5, 7, 11, 13};
  c.p = primes[t % 4];
  const long p = static_cast<long>(c.p);
  std::uniform_int_distribution<long> root(-30, 30);
  c.f = {Integer(std::uniform_int_distribution<long>(1, 4)(g) + p * root(g))};
  const int nroots = std::uniform_int_distribution<int>(0, 4)(g);
  for (int i = 0; i < nroots; ++i) {
    long r = root(g);
    if (i == 1 && t % 3 == 0) r = *c.integer_roots.begin() + p * p;  // roots agreeing mod p^2
    c.integer_roots.insert(r);
    c.f = poly_mul(c.f, {Integer(-r), Integer(1)});
  }
  if (t % 5 == 1) {
    // z^2 - d has two roots in Z_p iff d is a nonzero square mod p.
    const long d = std::uniform_int_distribution<long>(1, p - 1)(g);
    c.f = poly_mul(c.f, {Integer(-d), Integer(0), Integer(1)});
    long s = 0;
    while (s * s < d) ++s;
    if (s * s == d) {
      c.integer_roots.insert(s);
      c.integer_roots.insert(-s);
    } else {
      bool square = false;
      for (long x = 1; x < p; ++x) square = square || (x * x - d) % p == 0;
      c.other_roots = square ? 2 : 0;
    }
  }
  return c;
}

inline dynsml::arc::PowerSeriesTrunc planted_series(const PlantedCase& c, long prec) {
  dynsml::padic::PadicContext ctx(c.p, prec);
  IntPoly f = c.f;
  f.resize(f.size() + 3, dynsml::exactalg::Integer(0));
  dynsml::arc::PowerSeriesTrunc out{ctx, {}, prec + 100, static_cast<long>(f.size()) - 1};
  for (const auto& x : f) out.coeffs.push_back(ctx.from_integer(x));
  return out;
}

struct PlantedOutcome {
  long bound = 0;
  long true_roots = 0;        // distinct roots in Z_p
  bool bound_ok = false;      // true_roots <= bound
  bool all_found = false;     // the exact search finds exactly the integer roots
  bool all_matched = false;   // each integer root lies in exactly one root class
  bool certified = false;
};

inline PlantedOutcome check_planted(const PlantedCase& c, long prec = 30) {
  using namespace dynsml;
  PlantedOutcome o;
  arc::PowerSeriesTrunc s = planted_series(c, prec);
  strassman::BoundResult b = strassman::strassman_bound(s);
  o.bound = b.bound;
  o.true_roots = static_cast<long>(c.integer_roots.size()) + c.other_roots;
  o.bound_ok = b.verdict == strassman::Verdict::BoundedZeros && o.true_roots <= b.bound;
  padic::PadicContext ctx(c.p, prec);
  strassman::GeneratorSeries gs{arc::MahlerSeries(ctx, {ctx.one()}), s};
  auto truth = [&](long m) { return std::optional<bool>(poly_eval(c.f, exactalg::Integer(m)) == 0); };
  strassman::ZeroAnalysis z = strassman::classify_zero_set({gs}, truth, {});
  o.all_found = std::set<long>(z.zeros.begin(), z.zeros.end()) == c.integer_roots;
  o.all_matched = true;
  for (long r : c.integer_roots) {
    int hits = 0;
    for (const auto& rc : z.roots) hits += rc.contains(exactalg::Integer(r), c.p) ? 1 : 0;
    o.all_matched = o.all_matched && hits == 1;
  }
  o.certified = z.completeness == strassman::Completeness::Certified;
  return o;
}

}  // namespace testsupport
