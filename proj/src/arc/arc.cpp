#include "dynsml/arc/arc.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "dynsml/embedding/embedding.hpp"
#include "dynsml/error.hpp"

namespace dynsml::arc {

namespace {

Integer pow_p(unsigned long p, long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
  return r;
}

Integer mod(const Integer& z, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
  return r;
}

// C(x, k) for k = 0..K as exact integers.
std::vector<Integer> binomials(const Integer& x, long K) {
  std::vector<Integer> c(static_cast<std::size_t>(K) + 1);
  c[0] = 1;
  for (long k = 0; k < K; ++k) {
    Integer next = c[static_cast<std::size_t>(k)] * (x - k);
    mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(k + 1));
    c[static_cast<std::size_t>(k) + 1] = next;
  }
  return c;
}

}  // namespace

long mahler_tail_bound(long k) { return k <= 0 ? 0 : k / 2 + 1; }

MahlerSeries::MahlerSeries(PadicContext ctx, std::vector<PadicInt> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) fail(ErrorCode::InvalidArgument, "Mahler series needs at least one coefficient");
}

long MahlerSeries::integer_precision() const { return std::min(ctx_.N(), mahler_tail_bound(K() + 1)); }

long MahlerSeries::padic_precision() const {
  return std::min(ctx_.N() - padic::vp_factorial(static_cast<unsigned long>(K()), ctx_.p()),
                  mahler_tail_bound(K() + 1));
}

bool MahlerSeries::all_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const PadicInt& b) { return b.residue == 0; });
}

Approx MahlerSeries::evaluate(const Integer& m) const {
  const std::vector<Integer> c = binomials(m, K());
  Integer acc = 0;
  bool exact = true;
  for (long k = 0; k <= K(); ++k) {
    const auto& b = coeffs_[static_cast<std::size_t>(k)];
    const auto& ck = c[static_cast<std::size_t>(k)];
    if (ck == 0) continue;
    exact = exact && b.known_exact_zero;
    acc += b.residue * ck;
  }
  // Inside the interpolation range the tail contributes nothing.
  const bool inside = m >= 0 && m <= K();
  const long prec = inside ? ctx_.N() : integer_precision();
  return Approx{PadicInt{mod(acc, pow_p(ctx_.p(), prec)), inside && exact}, prec};
}

Approx MahlerSeries::evaluate(const PadicInt& z) const {
  const long prec = padic_precision();
  if (prec < 1)
    fail(ErrorCode::PrecisionExhausted, "precision N = " + std::to_string(ctx_.N()) +
                                            " cannot absorb the factorial loss of " + std::to_string(K()) +
                                            " Mahler terms");
  const std::vector<Integer> c = binomials(z.residue, K());
  Integer acc = 0;
  for (long k = 0; k <= K(); ++k) acc += coeffs_[static_cast<std::size_t>(k)].residue * c[static_cast<std::size_t>(k)];
  return Approx{PadicInt{mod(acc, pow_p(ctx_.p(), prec)), false}, prec};
}

std::string MahlerSeries::dump() const {
  std::ostringstream out;
  for (long k = 0; k <= K(); ++k) {
    const ValBound v = valuation(k);
    out << k << ' ' << (v.kind == ValBound::Kind::Infinite ? std::string("∞") : v.to_string()) << ' '
        << coeffs_[static_cast<std::size_t>(k)].residue.get_str() << '\n';
  }
  return out.str();
}

MahlerSeries mahler_from_values(std::span<const PadicInt> values, const PadicContext& ctx) {
  std::vector<PadicInt> b(values.begin(), values.end());
  const std::size_t n = b.size();
  // After pass k, b[t] holds the k-th difference at t - k for t >= k.
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t t = n - 1; t >= k; --t) b[t] = ctx.sub(b[t], b[t - 1]);
  bool prefix_exact = true;
  for (std::size_t k = 0; k < n; ++k) {
    prefix_exact = prefix_exact && values[k].known_exact_zero;
    b[k].known_exact_zero = prefix_exact;
  }
  return MahlerSeries(ctx, std::move(b));
}

MahlerSeries mahler_from_exact_values(std::span<const AlgNum> values, const Integer& theta_image,
                                      const PadicContext& ctx) {
  std::vector<AlgNum> d(values.begin(), values.end());
  const std::size_t n = d.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t t = n - 1; t >= k; --t) d[t] -= d[t - 1];
  std::vector<PadicInt> b;
  b.reserve(n);
  for (const auto& x : d) b.push_back(embedding::embed_algnum(x, theta_image, ctx));
  return MahlerSeries(ctx, std::move(b));
}

void certify_arc_valuations(const MahlerSeries& series) {
  for (long k = 1; k <= series.K(); ++k) {
    const ValBound v = series.valuation(k);
    if (v.kind != ValBound::Kind::Exact) continue;
    if (v.v < mahler_tail_bound(k))
      fail(ErrorCode::ValuationBoundViolated,
           "Mahler coefficient b_" + std::to_string(k) + " has valuation " + std::to_string(v.v) + " < " +
               std::to_string(mahler_tail_bound(k)) + "; the period certificate or the prime is wrong",
           k);
  }
}

Approx PowerSeriesTrunc::evaluate(const Integer& z) const {
  const Integer& m = ctx.modulus();
  Integer acc = 0;
  const Integer zr = mod(z, m);
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = mod(acc * zr + coeffs[j].residue, m);
  return Approx{PadicInt{acc, false}, ctx.N()};
}

long power_series_tail_bound(long K, unsigned long p) {
  long best = LONG_MAX;
  const long pm1 = static_cast<long>(p) - 1;
  for (long k = K + 1;; ++k) {
    // Lower envelope g(k) = (k+1)/2 - (k-1)/(p-1), increasing for p >= 5.
    if (best != LONG_MAX && (k + 1) * pm1 - 2 * (k - 1) >= 2 * best * pm1) break;
    best = std::min(best, mahler_tail_bound(k) - padic::vp_factorial(static_cast<unsigned long>(k), p));
  }
  return best;
}

const std::vector<std::vector<Integer>>& stirling_first(long K) {
  static std::mutex mu;
  static std::map<long, std::vector<std::vector<Integer>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(K);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<Integer>> s(static_cast<std::size_t>(K) + 1);
  s[0] = {Integer(1)};
  for (long k = 0; k < K; ++k) {
    const auto& prev = s[static_cast<std::size_t>(k)];
    std::vector<Integer> row(static_cast<std::size_t>(k) + 2, Integer(0));
    // s(k+1, j) = s(k, j-1) - k s(k, j)
    for (long j = 0; j <= k + 1; ++j) {
      Integer v = 0;
      if (j >= 1) v += prev[static_cast<std::size_t>(j) - 1];
      if (j <= k) v -= Integer(k) * prev[static_cast<std::size_t>(j)];
      row[static_cast<std::size_t>(j)] = v;
    }
    s[static_cast<std::size_t>(k) + 1] = std::move(row);
  }
  return cache.emplace(K, std::move(s)).first->second;
}

PowerSeriesTrunc mahler_to_power_series(const MahlerSeries& series, long J) {
  const unsigned long p = series.ctx().p();
  const long K = series.K();
  if (J < 0 || J > K) J = K;
  const long loss = padic::vp_factorial(static_cast<unsigned long>(K), p);
  const long T = power_series_tail_bound(K, p);
  const long prec = std::min(series.ctx().N() - loss, T);
  if (prec < 1)
    fail(ErrorCode::PrecisionExhausted, "precision N = " + std::to_string(series.ctx().N()) +
                                            " is too small to divide by " + std::to_string(K) + "! (loses " +
                                            std::to_string(loss) + " digits)");
  PadicContext pc(p, prec);
  const Integer& m = pc.modulus();
  const auto& s = stirling_first(K);
  // c_k = b_k / k! mod p^prec
  std::vector<Integer> c(static_cast<std::size_t>(K) + 1);
  Integer fact = 1;
  for (long k = 0; k <= K; ++k) {
    if (k > 0) fact *= k;
    Integer unit;
    const long vk = static_cast<long>(mpz_remove(unit.get_mpz_t(), fact.get_mpz_t(), Integer(p).get_mpz_t()));
    Integer r = series.coeffs()[static_cast<std::size_t>(k)].residue;
    if (vk > 0) {
      const Integer pv = pow_p(p, vk);
      if (mpz_divisible_p(r.get_mpz_t(), pv.get_mpz_t()) == 0)
        fail(ErrorCode::ValuationBoundViolated,
             "b_" + std::to_string(k) + " is not divisible by p^" + std::to_string(vk) + " = p-part of k!", k);
      mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), pv.get_mpz_t());
    }
    Integer inv;
    mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), m.get_mpz_t());
    c[static_cast<std::size_t>(k)] = mod(r * inv, m);
  }
  PowerSeriesTrunc out{pc, {}, T, K};
  for (long j = 0; j <= K; ++j) {
    Integer acc = 0;
    for (long k = j; k <= K; ++k) acc += c[static_cast<std::size_t>(k)] * s[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    out.coeffs.push_back(PadicInt{mod(acc, m), false});
  }
  if (J < K) {
    long t = T;
    for (long j = J + 1; j <= K; ++j) t = std::min(t, pc.valuation(out.coeffs[static_cast<std::size_t>(j)]).floor());
    out.coeffs.resize(static_cast<std::size_t>(J) + 1);
    out.tail_valuation_bound = t;
  }
  return out;
}

ArcBundle build_arc_bundle(const dynamics::OrbitTable& table, unsigned long class_index, const PadicContext& ctx,
                           const std::vector<std::vector<AlgNum>>* exact_points, const Integer& theta_image) {
  ArcBundle b{class_index, table.j, table, {}};
  const std::size_t n = table.base.size();
  for (std::size_t c = 0; c < n; ++c) {
    if (exact_points && exact_points->size() == table.values.size()) {
      std::vector<AlgNum> vals;
      for (const auto& pt : *exact_points) vals.push_back(pt[c]);
      b.series.push_back(mahler_from_exact_values(vals, theta_image, ctx));
    } else {
      std::vector<PadicInt> vals;
      for (const auto& pt : table.values) vals.push_back(PadicInt{pt[c], false});
      b.series.push_back(mahler_from_values(vals, ctx));
    }
  }
  return b;
}

MahlerSeries compose_with_poly(const padic::PadicPoly& poly, const ArcBundle& bundle, const PadicContext& ctx,
                               const std::vector<AlgNum>* exact_values, const Integer& theta_image) {
  if (poly.nvars() != bundle.table.base.size())
    fail(ErrorCode::ArityMismatch, "polynomial arity does not match the arc dimension");
  if (exact_values && exact_values->size() == bundle.table.values.size())
    return mahler_from_exact_values(*exact_values, theta_image, ctx);
  std::vector<PadicInt> vals;
  for (const auto& pt : bundle.table.values) vals.push_back(PadicInt{poly.evaluate(pt, ctx.modulus()), false});
  return mahler_from_values(vals, ctx);
}

}  // namespace dynsml::arc
