#include "dynsml/dynamics/dynamics.hpp"

#include <climits>

#include "dynsml/error.hpp"

namespace dynsml::dynamics {

namespace {

bool equal_mod_p(const Point& a, const Point& b, unsigned long p) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer d = a[i] - b[i];
    if (!mpz_divisible_ui_p(d.get_mpz_t(), p)) return false;
  }
  return true;
}

Point reduce(const Point& x, const Integer& m) {
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mpz_mod(out[i].get_mpz_t(), x[i].get_mpz_t(), m.get_mpz_t());
  return out;
}

Integer det_mod(IntMatrix a, const Integer& p) {
  const std::size_t n = a.size();
  Integer det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] % p == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    Integer inv;
    mpz_invert(inv.get_mpz_t(), a[c][c].get_mpz_t(), p.get_mpz_t());
    for (std::size_t r = c + 1; r < n; ++r) {
      Integer f = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        mpz_mod(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), p.get_mpz_t());
      }
    }
    mpz_mod(det.get_mpz_t(), det.get_mpz_t(), p.get_mpz_t());
  }
  return det;
}

std::vector<AlgNum> step_map(const exactalg::PolyMap& f, const std::vector<AlgNum>& x) {
  return exactalg::evaluate_map(f, x);
}

}  // namespace

unsigned long residue_orbit_period(const padic::PadicPolyMap& sigma, const Point& q, unsigned long p,
                                   unsigned long cap) {
  const Integer P(p);
  const Point start = reduce(q, P);
  Point x = start;
  for (unsigned long d = 1; d <= cap; ++d) {
    x = sigma.evaluate(x, P);
    if (x == start) return d;
  }
  fail(ErrorCode::Inconclusive, "residue orbit period exceeds " + std::to_string(cap) + " steps");
}

IntMatrix jacobian_at(const std::vector<std::vector<padic::PadicPoly>>& jac, const Point& x, const Integer& modulus) {
  IntMatrix out(jac.size());
  for (std::size_t i = 0; i < jac.size(); ++i)
    for (const auto& e : jac[i]) out[i].push_back(e.evaluate(x, modulus));
  return out;
}

IntMatrix period_jacobian(const padic::PadicPolyMap& sigma, const std::vector<std::vector<padic::PadicPoly>>& jac,
                          const Point& q, unsigned long d, unsigned long p) {
  const Integer P(p);
  Point x = reduce(q, P);
  IntMatrix acc = padic::identity_matrix(q.size());
  for (unsigned long t = 0; t < d; ++t) {
    // J(sigma^{t+1}, q) = J(sigma, sigma^t(q)) J(sigma^t, q)
    acc = padic::mat_mul_mod(jacobian_at(jac, x, P), acc, P);
    x = sigma.evaluate(x, P);
  }
  return acc;
}

Integer gl_order(std::size_t n, unsigned long p) {
  Integer pn, out = 1, pi = 1;
  mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
  for (std::size_t i = 0; i < n; ++i) {
    out *= pn - pi;
    pi *= p;
  }
  return out;
}

unsigned long matrix_order(const IntMatrix& a, unsigned long p) {
  const Integer P(p);
  if (det_mod(a, P) == 0) fail(ErrorCode::JacobianNotInvertible, "Jacobian at the orbit point is singular mod p");
  const Integer cap = gl_order(a.size(), p);
  IntMatrix x = a;
  for (unsigned long e = 1;; ++e) {
    if (padic::is_identity_mod(x, P)) return e;
    if (Integer(e) >= cap) break;
    x = padic::mat_mul_mod(x, a, P);
  }
  fail(ErrorCode::InternalContradiction, "matrix order exceeds |GL_n(F_p)|");
}

unsigned long jacobian_order(const padic::PadicPolyMap& sigma, const std::vector<std::vector<padic::PadicPoly>>& jac,
                             const Point& q, unsigned long d, unsigned long p) {
  return matrix_order(period_jacobian(sigma, jac, q, d, p), p);
}

PeriodCertificate find_period(const embedding::EmbeddedInstance& e) {
  const unsigned long p = e.ctx.p();
  PeriodCertificate c;
  c.base_point = reduce(e.q, Integer(p));
  c.d = residue_orbit_period(e.sigma, e.q, p);
  c.e = jacobian_order(e.sigma, e.jacobian, e.q, c.d, p);
  c.j = c.d * c.e;
  if (!verify_period(e, c)) fail(ErrorCode::InternalContradiction, "period certificate failed re-verification");
  return c;
}

bool verify_period(const embedding::EmbeddedInstance& e, const PeriodCertificate& cert) {
  const unsigned long p = e.ctx.p();
  if (cert.j != cert.d * cert.e || cert.j == 0) return false;
  if (cert.base_point != reduce(e.q, Integer(p))) return false;
  const Integer P(p);
  Point x = reduce(e.q, P);
  for (unsigned long t = 0; t < cert.j; ++t) x = e.sigma.evaluate(x, P);
  if (!equal_mod_p(x, cert.base_point, p)) return false;
  return padic::is_identity_mod(period_jacobian(e.sigma, e.jacobian, e.q, cert.j, p), P);
}

OrbitTable orbit_values(const padic::PadicPolyMap& sigma, unsigned long j, const Point& s, long K,
                        const Integer& modulus) {
  OrbitTable t{j, reduce(s, modulus), {}};
  t.values.reserve(static_cast<std::size_t>(K) + 1);
  Point x = t.base;
  t.values.push_back(x);
  for (long k = 1; k <= K; ++k) {
    for (unsigned long r = 0; r < j; ++r) x = sigma.evaluate(x, modulus);
    t.values.push_back(x);
  }
  return t;
}

ModularOrbit::ModularOrbit(const padic::PadicPolyMap& sigma, const padic::PadicPolyMap& sigma_inv, Point q,
                           Integer modulus)
    : sigma_(sigma), sigma_inv_(sigma_inv), modulus_(std::move(modulus)) {
  forward_.push_back(reduce(q, modulus_));
}

const Point& ModularOrbit::at(long m) {
  if (m >= 0) {
    while (static_cast<long>(forward_.size()) <= m) forward_.push_back(sigma_.evaluate(forward_.back(), modulus_));
    return forward_[static_cast<std::size_t>(m)];
  }
  const auto idx = static_cast<std::size_t>(-m - 1);
  while (backward_.size() <= idx)
    backward_.push_back(sigma_inv_.evaluate(backward_.empty() ? forward_.front() : backward_.back(), modulus_));
  return backward_[idx];
}

std::size_t point_bits(const std::vector<AlgNum>& x) {
  std::size_t bits = 0;
  for (const auto& a : x)
    for (const auto& c : a.coords())
      bits += mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
  return bits;
}

ExactOrbit::ExactOrbit(exactalg::PolyMap sigma, exactalg::PolyMap sigma_inv, std::vector<AlgNum> q,
                       std::size_t bit_budget, long stride)
    : sigma_(std::move(sigma)), sigma_inv_(std::move(sigma_inv)), bit_budget_(bit_budget), stride_(stride) {
  checkpoints_.emplace(0, std::move(q));
}

std::optional<std::vector<AlgNum>> ExactOrbit::advance_to(long m) const {
  // Caller holds mu_.
  const bool fwd = m >= 0;
  if (fwd && blocked_pos_ && m > reach_pos_) return std::nullopt;
  if (!fwd && blocked_neg_ && m < reach_neg_) return std::nullopt;
  auto it = fwd ? std::prev(checkpoints_.upper_bound(m)) : checkpoints_.lower_bound(m);
  long at = it->first;
  std::vector<AlgNum> x = it->second;
  const exactalg::PolyMap& f = fwd ? sigma_ : sigma_inv_;
  while (at != m) {
    x = step_map(f, x);
    at += fwd ? 1 : -1;
    if (point_bits(x) > bit_budget_) {
      if (fwd) {
        blocked_pos_ = true;
        reach_pos_ = at - 1;
      } else {
        blocked_neg_ = true;
        reach_neg_ = at + 1;
      }
      return std::nullopt;
    }
    if (at % stride_ == 0) checkpoints_.emplace(at, x);
  }
  return x;
}

std::optional<std::vector<AlgNum>> ExactOrbit::at(long m) const {
  std::lock_guard<std::mutex> lock(mu_);
  return advance_to(m);
}

std::vector<std::vector<AlgNum>> ExactOrbit::sweep(long start, long step, long count) const {
  std::vector<std::vector<AlgNum>> out;
  if (count <= 0) return out;
  std::optional<std::vector<AlgNum>> x = at(start);
  if (!x) return out;
  out.push_back(*x);
  const exactalg::PolyMap& f = step >= 0 ? sigma_ : sigma_inv_;
  const long steps = step >= 0 ? step : -step;
  std::vector<AlgNum> cur = *x;
  for (long k = 1; k < count; ++k) {
    for (long r = 0; r < steps; ++r) {
      cur = step_map(f, cur);
      if (point_bits(cur) > bit_budget_) return out;
    }
    out.push_back(cur);
  }
  return out;
}

std::vector<AlgNum> exact_orbit_point(const exactalg::AutomorphismCert& cert, const std::vector<AlgNum>& q, long m) {
  std::vector<AlgNum> x = q;
  const exactalg::PolyMap& f = m >= 0 ? cert.forward : cert.inverse;
  for (long t = 0; t < (m >= 0 ? m : -m); ++t) x = step_map(f, x);
  return x;
}

}  // namespace dynsml::dynamics
