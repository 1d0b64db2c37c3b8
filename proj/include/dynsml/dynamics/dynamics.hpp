#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "dynsml/embedding/embedding.hpp"
#include "dynsml/exactalg/automorphism.hpp"
#include "dynsml/padic/poly.hpp"

namespace dynsml::dynamics {

using exactalg::AlgNum;
using exactalg::Integer;
using padic::IntMatrix;
using Point = std::vector<Integer>;

// j = d * e with sigma^j(q) = q and J(sigma^j, q) = I mod p.
struct PeriodCertificate {
  unsigned long j = 1;
  unsigned long d = 1;
  unsigned long e = 1;
  Point base_point;  // q mod p
  bool operator==(const PeriodCertificate&) const = default;
};

// Smallest d >= 1 with sigma^d(q) = q mod p. Throws Inconclusive after `cap`
// steps (the orbit is purely periodic, so this is a resource limit only).
unsigned long residue_orbit_period(const padic::PadicPolyMap& sigma, const Point& q, unsigned long p,
                                   unsigned long cap = 50000000);

IntMatrix jacobian_at(const std::vector<std::vector<padic::PadicPoly>>& jac, const Point& x, const Integer& modulus);

// J(sigma^d, q) mod p by the chain rule, product of J(sigma, sigma^t(q)) for t = d-1..0.
IntMatrix period_jacobian(const padic::PadicPolyMap& sigma, const std::vector<std::vector<padic::PadicPoly>>& jac,
                          const Point& q, unsigned long d, unsigned long p);

// |GL_n(F_p)| = prod_{i<n} (p^n - p^i).
Integer gl_order(std::size_t n, unsigned long p);

// Smallest e >= 1 with A^e = I mod p. Throws JacobianNotInvertible when
// det A = 0 mod p and InternalContradiction past the |GL_n(F_p)| cap.
unsigned long matrix_order(const IntMatrix& a, unsigned long p);

unsigned long jacobian_order(const padic::PadicPolyMap& sigma, const std::vector<std::vector<padic::PadicPoly>>& jac,
                             const Point& q, unsigned long d, unsigned long p);

PeriodCertificate find_period(const embedding::EmbeddedInstance& e);

// Re-checks both conditions by iterating sigma j times mod p.
bool verify_period(const embedding::EmbeddedInstance& e, const PeriodCertificate& cert);

// Iterates of tau = sigma^j from s, for exponents 0..K (K + 1 points), mod `modulus`.
struct OrbitTable {
  unsigned long j = 1;
  Point base;
  std::vector<Point> values;
};

OrbitTable orbit_values(const padic::PadicPolyMap& sigma, unsigned long j, const Point& s, long K,
                        const Integer& modulus);

// sigma^m(q) mod modulus for m in [lo, hi], using sigma_inv for negative m.
class ModularOrbit {
 public:
  ModularOrbit(const padic::PadicPolyMap& sigma, const padic::PadicPolyMap& sigma_inv, Point q, Integer modulus);

  const Point& at(long m);
  const Integer& modulus() const { return modulus_; }

 private:
  const padic::PadicPolyMap& sigma_;
  const padic::PadicPolyMap& sigma_inv_;
  Integer modulus_;
  std::vector<Point> forward_;   // index m >= 0
  std::vector<Point> backward_;  // index -m - 1 for m < 0
};

// Exact sigma^m(q) over the number field, both directions. Points are cached
// every `stride` steps; values whose size passes `bit_budget` are refused, so
// maps with very fast height growth degrade to "unknown" instead of hanging.
// Safe for concurrent use.
class ExactOrbit {
 public:
  ExactOrbit(exactalg::PolyMap sigma, exactalg::PolyMap sigma_inv, std::vector<AlgNum> q,
             std::size_t bit_budget = 1u << 22, long stride = 64);

  std::optional<std::vector<AlgNum>> at(long m) const;

  // Points at start, start + step, ..., count of them; stops at the first
  // unreachable one (the returned vector is then shorter).
  std::vector<std::vector<AlgNum>> sweep(long start, long step, long count) const;

 private:
  std::optional<std::vector<AlgNum>> advance_to(long m) const;

  exactalg::PolyMap sigma_;
  exactalg::PolyMap sigma_inv_;
  std::size_t bit_budget_;
  long stride_;
  mutable std::mutex mu_;
  mutable std::map<long, std::vector<AlgNum>> checkpoints_;
  mutable long reach_pos_ = 0;  // largest m known reachable ahead
  mutable long reach_neg_ = 0;
  mutable bool blocked_pos_ = false, blocked_neg_ = false;
};

std::size_t point_bits(const std::vector<AlgNum>& x);

// sigma^m(q) by direct iteration (sigma_inv for m < 0).
std::vector<AlgNum> exact_orbit_point(const exactalg::AutomorphismCert& cert, const std::vector<AlgNum>& q, long m);

}  // namespace dynsml::dynamics
