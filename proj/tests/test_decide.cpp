#include <gtest/gtest.h>

#include "dynsml/decide/decide.hpp"
#include "random_instances.hpp"

using namespace dynsml;
using namespace dynsml::decide;
using testsupport::error_code_of;
using testsupport::make_instance;
using testsupport::rationals;

TEST(Decide, SwapGivesEvenIndices) {
  ProgressionSet r = decide::decide(testsupport::swap_instance());
  EXPECT_EQ(r.modulus, 2u);
  EXPECT_EQ(r.full_classes, std::vector<unsigned long>{0});
  EXPECT_TRUE(r.sporadic.empty());
  EXPECT_EQ(density_flag(r).flag, Density::NotDense);
}

TEST(Decide, OmegaInstances) {
  for (int k : {2, 3}) {
    ProblemInstance in = testsupport::omega_instance(k);
    ProgressionSet r = decide::decide(in);
    EXPECT_EQ(r.modulus, static_cast<unsigned long>(k)) << k;
    EXPECT_EQ(r.full_classes, std::vector<unsigned long>{0}) << k;
    EXPECT_TRUE(r.sporadic.empty()) << k;
    EXPECT_EQ(verify_certificates(in, r), std::nullopt);
  }
}

TEST(Decide, IdentityOnX) {
  auto in = make_instance(rationals(), {"x", "y"}, {"x", "y"}, {"x", "y"}, {"2", "3"}, {"x - 2", "x*y - 6"});
  ProgressionSet r = decide::decide(in);
  EXPECT_EQ(r.modulus, 1u);
  EXPECT_EQ(r.full_classes, std::vector<unsigned long>{0});
  EXPECT_EQ(density_flag(r).flag, Density::NotDense);
}

TEST(Decide, TranslationHasTwoZeros) {
  ProblemInstance in = testsupport::translation_instance();
  ProgressionSet r = decide::decide(in);
  EXPECT_TRUE(r.full_classes.empty());
  EXPECT_EQ(r.sporadic, (std::vector<long>{0, 2}));
  EXPECT_TRUE(r.complete());
  EXPECT_EQ(density_flag(r).flag, Density::NoObstructionFromThisX);
  EXPECT_EQ(verify_certificates(in, r), std::nullopt);
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize_progressions(std::vector<bool>(16, true), 16, {}), (Normalized{1, {0}, {}}));
  EXPECT_EQ(normalize_progressions({true, false, true, false}, 4, {}), (Normalized{2, {0}, {}}));
  EXPECT_EQ(normalize_progressions({true, false, true, false, true, false}, 6, {}), (Normalized{2, {0}, {}}));
  EXPECT_EQ(normalize_progressions({false, true, false}, 3, {6, 3, 6}), (Normalized{3, {1}, {3, 6}}));
  EXPECT_EQ(normalize_progressions({false, false, false}, 3, {7, -2, 7}), (Normalized{1, {}, {-2, 7}}));
  EXPECT_EQ(error_code_of([] { normalize_progressions({false, true, false}, 3, {4}); }),
            ErrorCode::InternalContradiction);
}

TEST(Retry, DoublesPrecisionThenTerms) {
  SolverConfig c;
  auto a = retry_policy(ErrorCode::Inconclusive, c, 0);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->precision, 128);
  EXPECT_EQ(a->terms, 144);
  auto b = retry_policy(ErrorCode::PrecisionExhausted, *a, 1);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->terms, 288);
  EXPECT_FALSE(retry_policy(ErrorCode::Inconclusive, *b, 2));
  EXPECT_FALSE(retry_policy(ErrorCode::NotInverse, c, 0));
  EXPECT_EQ(retry_policy(ErrorCode::PrecisionExhausted, c, 0)->precision, 128);
}

TEST(Decide, RejectsSmallPrimesAndBadInverse) {
  auto in = testsupport::swap_instance();
  in.config.prime_override = 2;
  EXPECT_EQ(error_code_of([&] { decide::decide(in); }), ErrorCode::UnsupportedPrime);
  in.config.prime_override = 3;
  EXPECT_EQ(error_code_of([&] { decide::decide(in); }), ErrorCode::UnsupportedPrime);
  auto bad = make_instance(rationals(), {"x", "y"}, {"y", "x + y"}, {"y", "x"}, {"0", "1"}, {"x"});
  EXPECT_EQ(error_code_of([&] { decide::decide(bad); }), ErrorCode::NotInverse);
}

TEST(Decide, PrimeOverrideIsHonoured) {
  auto in = testsupport::translation_instance();
  in.config.prime_override = 13;
  ProgressionSet r = decide::decide(in);
  EXPECT_EQ(r.embedding.p, 13u);
  EXPECT_EQ(r.period.j, 13u);
  EXPECT_EQ(r.sporadic, (std::vector<long>{0, 2}));
}

TEST(Decide, FibonacciEscalatesToCertify) {
  auto in = make_instance(rationals(), {"x", "y"}, {"y", "x + y"}, {"y - x", "x"}, {"0", "1"}, {"x"});
  ProgressionSet r = decide::decide(in);
  EXPECT_EQ(r.sporadic, std::vector<long>{0});
  EXPECT_TRUE(r.full_classes.empty());
  EXPECT_TRUE(r.complete());
  EXPECT_GT(r.primes_tried.size(), 1u);
  EXPECT_EQ(density_flag(r).flag, Density::NoObstructionFromThisX);
}

TEST(Properties, BruteForceAgreementAndCertificates) {
  auto g = testsupport::rng(5150);
  for (int t = 0; t < 12; ++t) {
    ProblemInstance in = testsupport::random_instance(g);
    in.config.search_bound = 400;
    ProgressionSet r = decide::decide(in);
    const auto truth = testsupport::brute_zeros(in, 400);
    for (long m = -400; m <= 400; ++m) ASSERT_EQ(r.contains(m), truth.count(m) > 0) << "instance " << t << " m=" << m;
    EXPECT_EQ(verify_certificates(in, r), std::nullopt) << t;
  }
}

TEST(Properties, DeterministicAndShiftCovariant) {
  auto g = testsupport::rng(77);
  for (int t = 0; t < 4; ++t) {
    ProblemInstance in = testsupport::random_instance(g);
    in.config.search_bound = 200;
    ProgressionSet a = decide::decide(in), b = decide::decide(in);
    EXPECT_EQ(a, b);
    ProblemInstance shifted = in;
    shifted.q = exactalg::evaluate_map(in.sigma, in.q);
    ProgressionSet s = decide::decide(shifted);
    for (long m = -150; m <= 150; ++m) EXPECT_EQ(a.contains(m + 1), s.contains(m)) << t << " " << m;
  }
}
