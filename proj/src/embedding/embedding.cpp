#include "dynsml/embedding/embedding.hpp"

#include <algorithm>

#include "dynsml/error.hpp"

namespace dynsml::embedding {

namespace {

using exactalg::AlgNum;
using exactalg::MultiPoly;

Integer common_denominator(const ProblemInstance& in, const AlgNum& jac_det) {
  Integer d = jac_det.common_denominator();
  auto poly = [&](const MultiPoly& f) {
    for (const auto& [e, c] : f.terms()) d = exactalg::lcm(d, c.common_denominator());
  };
  for (const auto& c : in.sigma.components()) poly(c);
  for (const auto& c : in.sigma_inv.components()) poly(c);
  for (const auto& g : in.variety) poly(g);
  for (const auto& x : in.q) d = exactalg::lcm(d, x.common_denominator());
  return d;
}

bool divides(unsigned long p, const Integer& z) { return mpz_divisible_ui_p(z.get_mpz_t(), p) != 0; }

// Value of a (with p-integral coordinates) at theta = r, mod m.
Integer image_mod(const AlgNum& a, const Integer& r, const Integer& m) {
  Integer acc = 0;
  const auto& c = a.coords();
  for (std::size_t i = c.size(); i-- > 0;) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), c[i].get_den().get_mpz_t(), m.get_mpz_t());
    acc = acc * r + c[i].get_num() * inv;
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

std::string congruence_text(const Congruence& c) {
  return std::to_string(c.residue) + " (mod " + std::to_string(c.modulus) + ")";
}

// Everything except prime-ness; returns a failure reason or the certificate.
std::optional<EmbeddingCert> try_prime(const ProblemInstance& in, const AlgNum& jac_det, const Integer& denom,
                                       unsigned long p, const std::optional<Congruence>& cong, long N,
                                       std::string& reason) {
  const auto& f = in.field->minpoly();
  EmbeddingCert cert;
  cert.p = p;
  cert.N = N;
  if (cong) {
    if (cong->modulus == 0 || p % cong->modulus != cong->residue % cong->modulus) {
      reason = "congruence p = " + congruence_text(*cong) + " fails";
      return std::nullopt;
    }
  }
  if (divides(p, denom)) {
    reason = "p divides a coefficient denominator";
    return std::nullopt;
  }
  cert.checks.push_back({"denominators", "lcm of all denominators " + exactalg::to_string(denom) + " is prime to p"});
  if (divides(p, in.field->discriminant())) {
    reason = "p divides the discriminant of the minimal polynomial";
    return std::nullopt;
  }
  cert.checks.push_back(
      {"discriminant", "p does not divide disc(minpoly) = " + exactalg::to_string(in.field->discriminant())});
  const Integer P(p);
  const auto df = exactalg::upoly::derivative(f);
  bool any_root = false;
  for (unsigned long r = 0; r < p; ++r) {
    const Integer R(r);
    if (!divides(p, exactalg::upoly::evaluate(f, R)) || divides(p, exactalg::upoly::evaluate(df, R))) continue;
    any_root = true;
    const Integer u = image_mod(jac_det, R, P);
    if (u == 0) continue;
    cert.root_mod_p = R;
    cert.checks.push_back({"simple_root", "minpoly(" + std::to_string(r) + ") = 0 and minpoly'(" +
                                              std::to_string(r) + ") != 0 mod p"});
    cert.checks.push_back({"jacobian_unit", "jac_det maps to " + exactalg::to_string(u) + " != 0 mod p"});
    if (cong) cert.checks.push_back({"congruence", "p = " + congruence_text(*cong)});
    padic::PadicContext ctx(p, N);
    cert.theta_image = padic::hensel_root(f, R, ctx).residue;
    cert.checks.push_back({"lift", "minpoly(theta_image) = 0 mod p^" + std::to_string(N)});
    return cert;
  }
  reason = any_root ? "jac_det is not a unit under any root of the minimal polynomial mod p"
                    : "minimal polynomial has no root mod p";
  return std::nullopt;
}

}  // namespace

EmbeddingCert select_prime(const ProblemInstance& in, const AlgNum& jac_det, const PrimeConstraints& c, long N) {
  const Integer denom = common_denominator(in, jac_det);
  std::string reason;
  for (unsigned long p = std::max(5ul, c.min_prime); p <= c.max_prime; ++p) {
    if (!padic::is_prime(p)) continue;
    if (auto cert = try_prime(in, jac_det, denom, p, c.congruence, N, reason)) return *cert;
  }
  fail(ErrorCode::NoPrimeInRange,
       "no prime in [" + std::to_string(std::max(5ul, c.min_prime)) + ", " + std::to_string(c.max_prime) +
           "] satisfies the embedding conditions; suitable primes always exist (positive density), so raise "
           "max_prime");
}

EmbeddingCert certify_prime(const ProblemInstance& in, const AlgNum& jac_det, unsigned long p,
                            const std::optional<Congruence>& congruence, long N) {
  padic::PadicContext probe(p, 1);  // rejects 2, 3 and composites
  std::string reason;
  if (auto cert = try_prime(in, jac_det, common_denominator(in, jac_det), p, congruence, N, reason)) return *cert;
  fail(ErrorCode::InvalidArgument, "prime " + std::to_string(p) + " is unusable: " + reason);
}

std::optional<std::string> verify_embedding(const ProblemInstance& in, const AlgNum& jac_det,
                                            const EmbeddingCert& cert) {
  const unsigned long p = cert.p;
  if (p < 5 || !padic::is_prime(p)) return "prime";
  if (in.congruence && (in.congruence->modulus == 0 ||
                          p % in.congruence->modulus != in.congruence->residue % in.congruence->modulus))
    return "congruence";
  if (divides(p, common_denominator(in, jac_det))) return "denominators";
  if (divides(p, in.field->discriminant())) return "discriminant";
  const auto& f = in.field->minpoly();
  if (!divides(p, exactalg::upoly::evaluate(f, cert.root_mod_p)) ||
      divides(p, exactalg::upoly::evaluate(exactalg::upoly::derivative(f), cert.root_mod_p)))
    return "simple_root";
  if (image_mod(jac_det, cert.root_mod_p, Integer(p)) == 0) return "jacobian_unit";
  Integer pn;
  mpz_ui_pow_ui(pn.get_mpz_t(), p, static_cast<unsigned long>(cert.N));
  Integer diff = cert.theta_image - cert.root_mod_p;
  if (!divides(p, diff)) return "lift";
  Integer val = exactalg::upoly::evaluate(f, cert.theta_image);
  if (mpz_divisible_p(val.get_mpz_t(), pn.get_mpz_t()) == 0) return "lift";
  return std::nullopt;
}

padic::PadicInt embed_algnum(const AlgNum& a, const Integer& theta_image, const padic::PadicContext& ctx) {
  if (a.is_zero()) return ctx.zero();
  padic::PadicInt acc{Integer(0), false};
  const padic::PadicInt t = ctx.from_integer(theta_image);
  const auto& c = a.coords();
  for (std::size_t i = c.size(); i-- > 0;) acc = ctx.add(ctx.mul(acc, t), ctx.embed_rational(c[i]));
  acc.known_exact_zero = false;
  return acc;
}

padic::PadicPoly embed_poly(const MultiPoly& f, const Integer& theta_image, const padic::PadicContext& ctx) {
  padic::PadicPoly out(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    Integer r = embed_algnum(c, theta_image, ctx).residue;
    if (r != 0) out.add_term(e, r);
  }
  return out;
}

padic::PadicPolyMap embed_map(const exactalg::PolyMap& f, const Integer& theta_image, const padic::PadicContext& ctx) {
  std::vector<padic::PadicPoly> comps;
  for (const auto& c : f.components()) comps.push_back(embed_poly(c, theta_image, ctx));
  return padic::PadicPolyMap(std::move(comps));
}

EmbeddedInstance embed_problem(const ProblemInstance& in, const exactalg::AutomorphismCert& aut,
                               const EmbeddingCert& cert, const padic::PadicContext& ctx) {
  if (cert.p != ctx.p() || cert.N < ctx.N())
    fail(ErrorCode::InternalContradiction, "embedding certificate does not match the p-adic context");
  const Integer theta = ctx.reduce(cert.theta_image);
  try {
    EmbeddedInstance out{ctx, embed_map(in.sigma, theta, ctx), embed_map(in.sigma_inv, theta, ctx), {}, {}, {}, {}};
    for (const auto& x : in.q) out.q.push_back(embed_algnum(x, theta, ctx).residue);
    for (const auto& g : in.variety) out.variety.push_back(embed_poly(g, theta, ctx));
    for (const auto& row : exactalg::jacobian(aut.forward)) {
      out.jacobian.emplace_back();
      for (const auto& e : row) out.jacobian.back().push_back(embed_poly(e, theta, ctx));
    }
    out.jac_det = embed_algnum(aut.jac_det, theta, ctx).residue;
    if (mpz_divisible_ui_p(out.jac_det.get_mpz_t(), ctx.p()))
      fail(ErrorCode::InternalContradiction, "embedded Jacobian determinant is not a unit");
    return out;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DenominatorNotUnit)
      fail(ErrorCode::InternalContradiction, std::string("embedding certificate is invalid: ") + e.what());
    throw;
  }
}

std::vector<unsigned long> padic_digits(const Integer& x, unsigned long p, long N) {
  std::vector<unsigned long> out;
  Integer r = x;
  for (long i = 0; i < N; ++i) {
    out.push_back(mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), p));
  }
  return out;
}

}  // namespace dynsml::embedding
