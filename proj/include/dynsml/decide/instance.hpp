#pragma once

#include <optional>
#include <vector>

#include "dynsml/error.hpp"
#include "dynsml/exactalg/multipoly.hpp"

namespace dynsml {

// p must satisfy p = residue (mod modulus).
struct Congruence {
  unsigned long modulus = 1;
  unsigned long residue = 0;
  bool operator==(const Congruence&) const = default;
};

struct SolverConfig {
  std::optional<unsigned long> prime_override;
  long precision = 64;       // N
  long terms = 144;          // K, Mahler terms b_0..b_K
  long search_bound = 1000;  // M, exact search radius per class
  long spot_radius = 50;     // M', exact checks for identically-zero classes
  long max_depth = 0;        // r_max; 0 means N/2 + 1
  unsigned long min_prime = 5;
  unsigned long max_prime = 10000;
  int prime_attempts = 4;    // qualifying primes tried before giving up on Certified
  unsigned threads = 1;
  bool operator==(const SolverConfig&) const = default;
};

struct ProblemInstance {
  exactalg::FieldPtr field;
  std::optional<Congruence> congruence;
  exactalg::PolyMap sigma;
  exactalg::PolyMap sigma_inv;
  std::vector<exactalg::AlgNum> q;
  std::vector<exactalg::MultiPoly> variety;
  SolverConfig config;

  std::size_t n() const { return sigma.nvars(); }
};

// Arity and nonemptiness checks shared by every entry point.
inline void check_instance_shape(const ProblemInstance& in) {
  const std::size_t n = in.sigma.nvars();
  if (in.sigma_inv.nvars() != n) fail(ErrorCode::ArityMismatch, "sigma and sigma_inv have different dimensions");
  if (in.q.size() != n) fail(ErrorCode::ArityMismatch, "point has the wrong number of coordinates");
  if (in.variety.empty()) fail(ErrorCode::InvalidArgument, "variety needs at least one generator");
  for (const auto& g : in.variety) {
    if (g.nvars() != n) fail(ErrorCode::ArityMismatch, "variety generator has the wrong number of variables");
    if (g.is_zero()) fail(ErrorCode::InvalidArgument, "variety generators must be nonzero polynomials");
  }
  for (const auto& c : in.sigma.components())
    if (c.nvars() != n) fail(ErrorCode::ArityMismatch, "sigma component has the wrong number of variables");
  for (const auto& c : in.sigma_inv.components())
    if (c.nvars() != n) fail(ErrorCode::ArityMismatch, "sigma_inv component has the wrong number of variables");
  const SolverConfig& c = in.config;
  if (c.precision < 1 || c.terms < 1 || c.search_bound < 0 || c.spot_radius < 0 || c.max_depth < 0 ||
      c.max_prime < c.min_prime || c.prime_attempts < 1 || c.threads < 1)
    fail(ErrorCode::InvalidArgument, "solver configuration values out of range");
}

}  // namespace dynsml
