#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynsml/decide/instance.hpp"
#include "dynsml/exactalg/automorphism.hpp"
#include "dynsml/padic/padic.hpp"
#include "dynsml/padic/poly.hpp"

namespace dynsml::embedding {

using exactalg::Integer;

struct Check {
  std::string name;
  std::string detail;
  bool operator==(const Check&) const = default;
};

// Why p is a good prime: every named check below has been verified.
struct EmbeddingCert {
  unsigned long p = 0;
  long N = 0;
  Integer root_mod_p;   // the chosen simple root of the minpoly mod p
  Integer theta_image;  // its lift mod p^N
  std::vector<Check> checks;
  bool operator==(const EmbeddingCert&) const = default;
};

struct PrimeConstraints {
  unsigned long min_prime = 5;
  unsigned long max_prime = 10000;
  std::optional<Congruence> congruence;
};

// Smallest prime in [max(5, min_prime), max_prime] satisfying: no coefficient
// denominator divisible by p, p does not divide disc(minpoly), minpoly has a
// simple root mod p making jac_det a p-adic unit, and the congruence.
// Throws NoPrimeInRange.
EmbeddingCert select_prime(const ProblemInstance& in, const exactalg::AlgNum& jac_det, const PrimeConstraints& c,
                           long N);

// The same checks for one given prime; throws UnsupportedPrime / InvalidArgument
// (with the failing condition) when p does not qualify.
EmbeddingCert certify_prime(const ProblemInstance& in, const exactalg::AlgNum& jac_det, unsigned long p,
                            const std::optional<Congruence>& congruence, long N);

// Recomputes every check from scratch. Returns the first failing check name,
// or nullopt when all pass.
std::optional<std::string> verify_embedding(const ProblemInstance& in, const exactalg::AlgNum& jac_det,
                                            const EmbeddingCert& cert);

// theta -> theta_image.
padic::PadicInt embed_algnum(const exactalg::AlgNum& a, const Integer& theta_image, const padic::PadicContext& ctx);
padic::PadicPoly embed_poly(const exactalg::MultiPoly& f, const Integer& theta_image, const padic::PadicContext& ctx);
padic::PadicPolyMap embed_map(const exactalg::PolyMap& f, const Integer& theta_image, const padic::PadicContext& ctx);

struct EmbeddedInstance {
  padic::PadicContext ctx;
  padic::PadicPolyMap sigma;
  padic::PadicPolyMap sigma_inv;
  std::vector<Integer> q;
  std::vector<padic::PadicPoly> variety;
  std::vector<std::vector<padic::PadicPoly>> jacobian;  // entries of J(sigma)
  Integer jac_det;
};

// Throws InternalContradiction if the certificate does not fit the instance.
EmbeddedInstance embed_problem(const ProblemInstance& in, const exactalg::AutomorphismCert& aut,
                               const EmbeddingCert& cert, const padic::PadicContext& ctx);

// Base-p digits of x mod p^N, least significant first.
std::vector<unsigned long> padic_digits(const Integer& x, unsigned long p, long N);

}  // namespace dynsml::embedding
