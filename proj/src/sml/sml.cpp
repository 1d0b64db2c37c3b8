#include "dynsml/sml/sml.hpp"

#include <algorithm>

namespace dynsml::sml {

using exactalg::AlgNum;
using exactalg::MultiPoly;
using exactalg::PolyMap;

void check_recurrence(const LinearRecurrence& rec) {
  if (rec.order() == 0) fail(ErrorCode::InvalidArgument, "recurrence needs at least one coefficient");
  if (rec.initial.size() != rec.order())
    fail(ErrorCode::InvalidArgument, "recurrence of order " + std::to_string(rec.order()) + " needs " +
                                         std::to_string(rec.order()) + " initial values");
}

LinearRep recurrence_to_linear_rep(const LinearRecurrence& rec) {
  check_recurrence(rec);
  const std::size_t r = rec.order();
  if (rec.coeffs.back() == 0) fail(ErrorCode::DegenerateRecurrence, "a_r = 0: strip trailing zero coefficients first");
  LinearRep rep;
  rep.M.assign(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t i = 0; i + 1 < r; ++i) rep.M[i][i + 1] = 1;
  for (std::size_t c = 0; c < r; ++c) rep.M[r - 1][c] = rec.coeffs[r - 1 - c];
  rep.v.assign(r, Rational(0));
  rep.v[0] = 1;
  rep.w = rec.initial;
  return rep;
}

std::vector<Rational> linear_rep_to_coeffs(const LinearRep& rep, std::size_t count) {
  const std::size_t r = rep.w.size();
  std::vector<Rational> out, x = rep.w;
  for (std::size_t i = 0; i < count; ++i) {
    Rational c = i < rep.P.size() ? rep.P[i] : Rational(0);
    for (std::size_t k = 0; k < r; ++k) c += rep.v[k] * x[k];
    out.push_back(c);
    std::vector<Rational> y(r, Rational(0));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        if (rep.M[a][b] != 0) y[a] += rep.M[a][b] * x[b];
    x = std::move(y);
  }
  return out;
}

std::vector<Rational> unroll(const LinearRecurrence& rec, std::size_t count) {
  check_recurrence(rec);
  std::vector<Rational> f(rec.initial);
  while (f.size() < count) {
    Rational next = 0;
    for (std::size_t j = 1; j <= rec.order(); ++j) next += rec.coeffs[j - 1] * f[f.size() - j];
    f.push_back(next);
  }
  f.resize(count);
  return f;
}

Stripped strip_trailing_zeros(const LinearRecurrence& rec) {
  check_recurrence(rec);
  Stripped s{rec, 0};
  while (!s.rec.coeffs.empty() && s.rec.coeffs.back() == 0) {
    s.rec.coeffs.pop_back();
    ++s.shift;
  }
  s.rec.initial.assign(rec.initial.begin() + static_cast<long>(s.shift), rec.initial.end());
  return s;
}

ProblemInstance companion_instance(const LinearRecurrence& rec, const SolverConfig& config) {
  check_recurrence(rec);
  const std::size_t r = rec.order();
  const Rational& ar = rec.coeffs.back();
  if (ar == 0) fail(ErrorCode::DegenerateRecurrence, "a_r = 0: the companion map is not invertible");
  const auto f = exactalg::NumberField::rationals();
  auto var = [&](std::size_t i) { return MultiPoly::variable(f, r, i); };
  auto num = [&](const Rational& c) { return AlgNum(f, c); };

  std::vector<MultiPoly> fwd, inv;
  for (std::size_t i = 0; i + 1 < r; ++i) fwd.push_back(var(i + 1));
  MultiPoly last(f, r);
  for (std::size_t c = 0; c < r; ++c) last += var(c).scaled(num(rec.coeffs[r - 1 - c]));
  fwd.push_back(last);

  // x_0 = (y_{r-1} - sum_{c>=1} a_{r-c} y_{c-1}) / a_r, x_c = y_{c-1}.
  MultiPoly first = var(r - 1);
  for (std::size_t c = 1; c < r; ++c) first -= var(c - 1).scaled(num(rec.coeffs[r - 1 - c]));
  inv.push_back(first.scaled(num(1 / ar)));
  for (std::size_t c = 1; c < r; ++c) inv.push_back(var(c - 1));

  std::vector<AlgNum> q;
  for (const auto& x : rec.initial) q.push_back(num(x));
  return ProblemInstance{f, std::nullopt, PolyMap(std::move(fwd)), PolyMap(std::move(inv)), std::move(q), {var(0)},
                         config};
}

bool RecurrenceZeroSet::contains(long m) const {
  if (m < 0) return false;
  if (std::binary_search(sporadic.begin(), sporadic.end(), m)) return true;
  return m >= start &&
         std::binary_search(full_classes.begin(), full_classes.end(), static_cast<unsigned long>(m) % modulus);
}

bool RecurrenceZeroSet::complete() const { return !certificate || certificate->complete(); }

RecurrenceZeroSet zero_set_of_recurrence(const LinearRecurrence& rec, const SolverConfig& config) {
  Stripped s = strip_trailing_zeros(rec);
  RecurrenceZeroSet out;
  out.shift = s.shift;
  out.start = static_cast<long>(s.shift);
  for (std::size_t m = 0; m < s.shift; ++m)
    if (rec.initial[m] == 0) out.sporadic.push_back(static_cast<long>(m));
  if (s.rec.order() == 0) {
    // f(n) = 0 for every n >= r.
    out.full_classes = {0};
    return out;
  }
  decide::ProgressionSet ps = decide::decide(companion_instance(s.rec, config));
  const long mod = static_cast<long>(ps.modulus);
  out.modulus = ps.modulus;
  for (unsigned long c : ps.full_classes)
    out.full_classes.push_back(static_cast<unsigned long>((static_cast<long>(c) + out.start) % mod));
  std::sort(out.full_classes.begin(), out.full_classes.end());
  for (long k : ps.sporadic)
    if (k >= 0) out.sporadic.push_back(k + out.start);
  std::sort(out.sporadic.begin(), out.sporadic.end());
  out.certificate = std::move(ps);
  return out;
}

}  // namespace dynsml::sml
