#pragma once

#include "dynsml/dynamics/dynamics.hpp"
#include "dynsml/embedding/embedding.hpp"
#include "support.hpp"

namespace testsupport {

struct Embedded {
  dynsml::exactalg::AutomorphismCert aut;
  dynsml::embedding::EmbeddingCert cert;
  dynsml::embedding::EmbeddedInstance e;
};

// p = 0 selects the smallest admissible prime.
inline Embedded embed_for_tests(const dynsml::ProblemInstance& in, unsigned long p, long N) {
  auto aut = dynsml::exactalg::validate_automorphism(in.sigma, in.sigma_inv);
  dynsml::embedding::PrimeConstraints pc;
  pc.congruence = in.congruence;
  auto cert = p == 0 ? dynsml::embedding::select_prime(in, aut.jac_det, pc, N)
                     : dynsml::embedding::certify_prime(in, aut.jac_det, p, in.congruence, N);
  dynsml::padic::PadicContext ctx(cert.p, N);
  auto e = dynsml::embedding::embed_problem(in, aut, cert, ctx);
  return {aut, cert, e};
}

}  // namespace testsupport

#include "dynsml/arc/arc.hpp"

namespace testsupport {

// Arc for class i of tau = sigma^j through sigma^i(q), with j from the period certificate.
struct ArcCase {
  Embedded emb;
  dynsml::dynamics::PeriodCertificate period;
  dynsml::arc::ArcBundle bundle;
  dynsml::dynamics::Point start;  // sigma^i(q) mod p^N
};

inline ArcCase build_arc_case(const dynsml::ProblemInstance& in, unsigned long p, long N, long K, unsigned long i) {
  Embedded emb = embed_for_tests(in, p, N);
  auto period = dynsml::dynamics::find_period(emb.e);
  dynsml::dynamics::Point s = emb.e.q;
  const auto& m = emb.e.ctx.modulus();
  for (unsigned long t = 0; t < i; ++t) s = emb.e.sigma.evaluate(s, m);
  auto table = dynsml::dynamics::orbit_values(emb.e.sigma, period.j, s, K, m);
  auto bundle = dynsml::arc::build_arc_bundle(table, i, emb.e.ctx);
  return {emb, period, bundle, s};
}

}  // namespace testsupport
