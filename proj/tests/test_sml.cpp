#include <gtest/gtest.h>

#include "dynsml/exactalg/automorphism.hpp"
#include "dynsml/sml/sml.hpp"
#include "support.hpp"

using namespace dynsml;
using namespace dynsml::sml;
using testsupport::error_code_of;

namespace {

LinearRecurrence rec(std::vector<long> a, std::vector<long> init) {
  LinearRecurrence r;
  for (long x : a) r.coeffs.emplace_back(x);
  for (long x : init) r.initial.emplace_back(x);
  return r;
}

Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// g(n) = (1 - (-1)^n)(n - 5).
Rational closed_form(long n) { return Rational((n % 2 ? 2 : 0) * (n - 5)); }

// Zeros for 0 <= m <= bound straight from the recurrence.
std::vector<long> brute(const LinearRecurrence& r, long bound) {
  std::vector<long> out;
  auto f = unroll(r, static_cast<std::size_t>(bound + 1));
  for (long m = 0; m <= bound; ++m)
    if (f[static_cast<std::size_t>(m)] == 0) out.push_back(m);
  return out;
}

void expect_matches_brute(const LinearRecurrence& r, const RecurrenceZeroSet& z, long bound) {
  auto zeros = brute(r, bound);
  for (long m = 0; m <= bound; ++m)
    ASSERT_EQ(z.contains(m), std::binary_search(zeros.begin(), zeros.end(), m)) << "m=" << m;
}

}  // namespace

TEST(LinearRep, Examples) {
  LinearRep fib = recurrence_to_linear_rep(rec({1, 1}, {0, 1}));
  EXPECT_EQ(fib.M, (RatMatrix{{Rational(0), Rational(1)}, {Rational(1), Rational(1)}}));
  EXPECT_EQ(linear_rep_to_coeffs(fib, 10), unroll(rec({1, 1}, {0, 1}), 10));
  std::vector<Rational> first6;
  for (long x : {0, 1, 1, 2, 3, 5}) first6.emplace_back(x);
  EXPECT_EQ(linear_rep_to_coeffs(fib, 6), first6);

  LinearRep two = recurrence_to_linear_rep(rec({2}, {1}));
  EXPECT_EQ(two.M, RatMatrix{{Rational(2)}});
  std::vector<Rational> pow2{Rational(1), Rational(2), Rational(4), Rational(8)};
  EXPECT_EQ(linear_rep_to_coeffs(two, 4), pow2);

  LinearRep zero = fib;
  zero.w = {Rational(0), Rational(0)};
  for (const auto& c : linear_rep_to_coeffs(zero, 8)) EXPECT_EQ(c, 0);

  LinearRep corrected = two;
  corrected.P = {Rational(5)};
  EXPECT_EQ(linear_rep_to_coeffs(corrected, 2), (std::vector<Rational>{Rational(6), Rational(2)}));

  EXPECT_EQ(error_code_of([] { recurrence_to_linear_rep(rec({1, 0}, {1, 1})); }), ErrorCode::DegenerateRecurrence);
  EXPECT_EQ(error_code_of([] { recurrence_to_linear_rep(rec({1, 1}, {1})); }), ErrorCode::InvalidArgument);
}

TEST(LinearRep, OrderFourInitialsMatchClosedForm) {
  auto r = rec({0, 2, 0, -1}, {0, -8, 0, -4});
  auto f = unroll(r, 21);
  for (long n = 0; n <= 20; ++n) EXPECT_EQ(f[static_cast<std::size_t>(n)], closed_form(n)) << n;
}

TEST(Strip, TrailingZeros) {
  Stripped s = strip_trailing_zeros(rec({1, 0}, {3, 4}));
  EXPECT_EQ(s.shift, 1u);
  EXPECT_EQ(s.rec, rec({1}, {4}));
  auto orig = unroll(rec({1, 0}, {3, 4}), 12);
  auto shifted = unroll(s.rec, 11);
  for (std::size_t k = 0; k < 11; ++k) EXPECT_EQ(orig[k + 1], shifted[k]);
}

TEST(Companion, ValidatesExactlyWhenInvertible) {
  auto g = testsupport::rng(11);
  for (int t = 0; t < 20; ++t) {
    const std::size_t r = std::uniform_int_distribution<std::size_t>(1, 4)(g);
    LinearRecurrence x;
    for (std::size_t i = 0; i < r; ++i) {
      x.coeffs.push_back(frac(std::uniform_int_distribution<int>(-3, 3)(g), std::uniform_int_distribution<int>(1, 3)(g)));
      x.initial.emplace_back(std::uniform_int_distribution<int>(-3, 3)(g));
    }
    if (t % 2) x.coeffs.back() = 0;
    if (x.coeffs.back() == 0) {
      EXPECT_EQ(error_code_of([&] { companion_instance(x); }), ErrorCode::DegenerateRecurrence);
      // Any candidate inverse fails: the Jacobian determinant is +-a_r = 0.
      LinearRecurrence y = x;
      y.coeffs.back() = 1;
      ProblemInstance good = companion_instance(y);
      std::vector<exactalg::MultiPoly> comps = good.sigma.components();
      comps.back() -= exactalg::MultiPoly::variable(good.field, r, 0);
      EXPECT_ANY_THROW(exactalg::validate_automorphism(exactalg::PolyMap(comps), good.sigma_inv));
      EXPECT_TRUE(exactalg::det_polymatrix(exactalg::jacobian(exactalg::PolyMap(comps))).is_zero());
    } else {
      ProblemInstance in = companion_instance(x);
      auto cert = exactalg::validate_automorphism(in.sigma, in.sigma_inv);
      EXPECT_FALSE(cert.jac_det.is_zero());
    }
  }
}

TEST(Properties, RoundTripAgainstUnrolling) {
  auto g = testsupport::rng(2024);
  for (int t = 0; t < 50; ++t) {
    const std::size_t r = std::uniform_int_distribution<std::size_t>(1, 5)(g);
    LinearRecurrence x;
    for (std::size_t i = 0; i < r; ++i) {
      x.coeffs.push_back(frac(std::uniform_int_distribution<int>(-4, 4)(g), std::uniform_int_distribution<int>(1, 4)(g)));
      x.initial.push_back(frac(std::uniform_int_distribution<int>(-9, 9)(g), std::uniform_int_distribution<int>(1, 2)(g)));
    }
    if (x.coeffs.back() == 0) x.coeffs.back() = 1;
    EXPECT_EQ(linear_rep_to_coeffs(recurrence_to_linear_rep(x), 40), unroll(x, 40)) << t;
  }
}

TEST(ZeroSet, Fibonacci) {
  auto r = rec({1, 1}, {0, 1});
  RecurrenceZeroSet z = zero_set_of_recurrence(r);
  EXPECT_TRUE(z.full_classes.empty());
  EXPECT_EQ(z.sporadic, std::vector<long>{0});
  EXPECT_TRUE(z.complete());
  expect_matches_brute(r, z, 10000);
}

TEST(ZeroSet, PeriodTwo) {
  auto r = rec({0, 1}, {0, 1});
  RecurrenceZeroSet z = zero_set_of_recurrence(r);
  EXPECT_EQ(z.modulus, 2u);
  EXPECT_EQ(z.full_classes, std::vector<unsigned long>{0});
  EXPECT_TRUE(z.sporadic.empty());
  expect_matches_brute(r, z, 2000);
}

TEST(ZeroSet, OrderFour) {
  auto r = rec({0, 2, 0, -1}, {0, -8, 0, -4});
  RecurrenceZeroSet z = zero_set_of_recurrence(r);
  EXPECT_EQ(z.modulus, 2u);
  EXPECT_EQ(z.full_classes, std::vector<unsigned long>{0});
  EXPECT_EQ(z.sporadic, std::vector<long>{5});
  expect_matches_brute(r, z, 2000);
}

TEST(ZeroSet, DegenerateRecurrences) {
  // f = 0, 5, 5, 5, ... : only m = 0.
  auto a = rec({1, 0}, {0, 5});
  RecurrenceZeroSet za = zero_set_of_recurrence(a);
  EXPECT_EQ(za.shift, 1u);
  EXPECT_EQ(za.sporadic, std::vector<long>{0});
  expect_matches_brute(a, za, 500);
  // f = 1, 0, 2, 0, 0, ... : zero from m = 3 on, plus m = 1.
  auto b = rec({0, 0, 0}, {1, 0, 2});
  RecurrenceZeroSet zb = zero_set_of_recurrence(b);
  EXPECT_EQ(zb.start, 3);
  EXPECT_EQ(zb.sporadic, std::vector<long>{1});
  expect_matches_brute(b, zb, 100);
  // f(n) = -f(n-2) with a trailing zero: 3, 0, 1, 0, -1, 0, 1, ...
  auto c = rec({0, -1, 0}, {3, 0, 1});
  RecurrenceZeroSet zc = zero_set_of_recurrence(c);
  expect_matches_brute(c, zc, 500);
}

TEST(Properties, RandomRecurrencesMatchBruteForce) {
  auto g = testsupport::rng(99);
  for (int t = 0; t < 8; ++t) {
    const std::size_t r = std::uniform_int_distribution<std::size_t>(1, 3)(g);
    LinearRecurrence x;
    for (std::size_t i = 0; i < r; ++i) {
      x.coeffs.emplace_back(std::uniform_int_distribution<int>(-2, 2)(g));
      x.initial.emplace_back(std::uniform_int_distribution<int>(-2, 2)(g));
    }
    SolverConfig cfg;
    cfg.search_bound = 300;
    RecurrenceZeroSet z = zero_set_of_recurrence(x, cfg);
    expect_matches_brute(x, z, 300);
  }
}
