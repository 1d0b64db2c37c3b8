#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynsml/dynamics/dynamics.hpp"
#include "dynsml/padic/padic.hpp"
#include "dynsml/padic/poly.hpp"

namespace dynsml::arc {

using exactalg::AlgNum;
using exactalg::Integer;
using padic::PadicContext;
using padic::PadicInt;
using padic::ValBound;

// Guaranteed lower bound on v(b_k) for an arc: ceil((k+1)/2) = floor(k/2) + 1
// for k >= 1; b_0 (the base point) is unconstrained.
long mahler_tail_bound(long k);

// A value known modulo p^precision.
struct Approx {
  PadicInt value;
  long precision = 0;
};

// f(z) = sum_k b_k C(z, k), coefficients b_0..b_K mod p^N.
class MahlerSeries {
 public:
  MahlerSeries(PadicContext ctx, std::vector<PadicInt> coeffs);

  const PadicContext& ctx() const { return ctx_; }
  const std::vector<PadicInt>& coeffs() const { return coeffs_; }
  long K() const { return static_cast<long>(coeffs_.size()) - 1; }
  ValBound valuation(long k) const { return ctx_.valuation(coeffs_[static_cast<std::size_t>(k)]); }

  // Precision of values at integers: min(N, tail bound at K + 1).
  long integer_precision() const;
  // Precision of values at arbitrary z in Z_p: also loses v_p(K!).
  long padic_precision() const;

  // True when every b_k is 0 mod p^N.
  bool all_zero() const;

  Approx evaluate(const Integer& m) const;
  // Throws PrecisionExhausted when padic_precision() < 1.
  Approx evaluate(const PadicInt& z) const;

  // "k v residue" lines, "inf" for exact zeros and ">=N" when unknown.
  std::string dump() const;

 private:
  PadicContext ctx_;
  std::vector<PadicInt> coeffs_;
};

// Forward differences b_k = sum_t (-1)^(k-t) C(k,t) v_t mod p^N. b_k is
// flagged as an exact zero when v_0..v_k all are.
MahlerSeries mahler_from_values(std::span<const PadicInt> values, const PadicContext& ctx);

// Same from exact field values; b_k is an exact zero iff the exact difference is.
MahlerSeries mahler_from_exact_values(std::span<const AlgNum> values, const Integer& theta_image,
                                      const PadicContext& ctx);

// Checks v(b_k) >= mahler_tail_bound(k) for 1 <= k <= K. A residue of 0 passes.
// Throws ValuationBoundViolated with detail k.
void certify_arc_valuations(const MahlerSeries& series);

// sum_j a_j z^j with a_0..a_J known mod p^precision (the context's N) and
// v(a_j) >= tail_valuation_bound for j > J.
struct PowerSeriesTrunc {
  PadicContext ctx;
  std::vector<PadicInt> coeffs;
  long tail_valuation_bound = 0;
  long source_terms = 0;  // K of the Mahler series it came from

  long precision() const { return ctx.N(); }
  Approx evaluate(const Integer& z) const;
};

// min over k > K of ceil((k+1)/2) - v_p(k!), scanned until the closed form
// (k+1)/2 - (k-1)/(p-1) rules out smaller values.
long power_series_tail_bound(long K, unsigned long p);

// a_j = sum_{k>=j} b_k s(k,j) / k!, kept mod p^min(N - v_p(K!), T).
// J < 0 means J = K. Throws PrecisionExhausted.
PowerSeriesTrunc mahler_to_power_series(const MahlerSeries& series, long J = -1);

// Signed Stirling numbers of the first kind s(k, j), 0 <= j <= k <= K.
const std::vector<std::vector<Integer>>& stirling_first(long K);

// The arc of tau = sigma^j through s_i = sigma^i(q), one series per coordinate.
struct ArcBundle {
  unsigned long class_index = 0;
  unsigned long period = 1;
  dynamics::OrbitTable table;
  std::vector<MahlerSeries> series;
};

// exact_points (optional) are tau^m(s) for m = 0..K over the number field;
// when present, coordinate series carry exact-zero flags.
ArcBundle build_arc_bundle(const dynamics::OrbitTable& table, unsigned long class_index, const PadicContext& ctx,
                           const std::vector<std::vector<AlgNum>>* exact_points = nullptr,
                           const Integer& theta_image = Integer(0));

// Mahler series of P(z) = Q(f(z)) from the values Q(tau^m(s)), m = 0..K.
MahlerSeries compose_with_poly(const padic::PadicPoly& poly, const ArcBundle& bundle, const PadicContext& ctx,
                               const std::vector<AlgNum>* exact_values = nullptr,
                               const Integer& theta_image = Integer(0));

}  // namespace dynsml::arc
