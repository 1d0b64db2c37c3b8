#include <gtest/gtest.h>

#include "support.hpp"

using namespace dynsml;
using namespace dynsml::exactalg;
using testsupport::PolyReader;

namespace {

FieldPtr Q() { return NumberField::rationals(); }

// Gaussian elimination over the field; independent of the cofactor code.
AlgNum numeric_det(std::vector<std::vector<AlgNum>> m) {
  const std::size_t n = m.size();
  const FieldPtr f = m[0][0].field();
  AlgNum det(f, Rational(1));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c].is_zero()) ++pivot;
    if (pivot == n) return AlgNum(f);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const AlgNum inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      const AlgNum factor = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  return det;
}

struct OmegaMap {
  FieldPtr field;
  PolyMap sigma;
  PolyMap sigma_inv;
};

// omega of order 2k: k = 2 uses x^2 + 1, k = 3 uses x^2 - x + 1.
OmegaMap omega_map(int k) {
  FieldPtr f = k == 2 ? make_field({Integer(1), Integer(0), Integer(1)}) : make_field({Integer(1), Integer(-1), Integer(1)});
  PolyReader r(f, {"a", "b", "c", "d"});
  PolyMap sigma = r.map({"a", "b - 3*d^2 - 3*d*a^2 - a^4", "w*c", "d + a^2"});
  // Back-substitution: d = D - A^2, c = C/w, b = B + 3d^2 + 3da^2 + a^4.
  const std::string winv = k == 2 ? "(-w)" : "(1 - w)";
  PolyMap inv = r.map({"a", "b + 3*d^2 - 3*d*a^2 + a^4", winv + "*c", "d - a^2"});
  return {f, sigma, inv};
}

}  // namespace

TEST(Rational, ParsesCanonicalForms) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational(" -7 "), Rational(-7));
  EXPECT_EQ(parse_rational("0/5"), Rational(0));
  EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
  for (const char* bad : {"", "1/0", "x", "1/-2", "1.5", "--1", "3/"})
    EXPECT_EQ(testsupport::error_code_of([&] { parse_rational(bad); }), ErrorCode::ParseError) << bad;
}

TEST(NumberFieldTest, RejectsReducibleMinpoly) {
  EXPECT_EQ(testsupport::error_code_of([] { make_field({Integer(-1), Integer(0), Integer(1)}); }),
            ErrorCode::ReducibleMinpoly);
  // (x^2 + 1)(x^2 + 2) has no rational root; the degree screen cannot separate
  // it from an irreducible quartic, so it is rejected as inconclusive.
  EXPECT_EQ(testsupport::error_code_of([] { make_field({Integer(2), Integer(0), Integer(3), Integer(0), Integer(1)}); }),
            ErrorCode::IrreducibilityInconclusive);
  // x^4 - x - 1 is proven irreducible by the screen.
  EXPECT_EQ(make_field({Integer(-1), Integer(-1), Integer(0), Integer(0), Integer(1)})->degree(), 4);
  EXPECT_EQ(testsupport::error_code_of([] { make_field({Integer(1), Integer(2)}); }), ErrorCode::InvalidArgument);
}

TEST(NumberFieldTest, DiscriminantOfQuadratics) {
  EXPECT_EQ(make_field({Integer(-2), Integer(0), Integer(1)})->discriminant(), Integer(8));
  EXPECT_EQ(make_field({Integer(1), Integer(-1), Integer(1)})->discriminant(), Integer(-3));
  EXPECT_EQ(make_field({Integer(1), Integer(0), Integer(1)})->discriminant(), Integer(-4));
  // x^3 - 2: -27 * 4 = -108.
  EXPECT_EQ(make_field({Integer(-2), Integer(0), Integer(0), Integer(1)})->discriminant(), Integer(-108));
}

TEST(AlgNumTest, MinpolyReducesToZero) {
  std::mt19937_64 g(11);
  const std::vector<upoly::ZPoly> polys = {{Integer(-2), Integer(0), Integer(1)},
                                           {Integer(1), Integer(-1), Integer(1)},
                                           {Integer(-2), Integer(0), Integer(0), Integer(1)},
                                           {Integer(1), Integer(1), Integer(1), Integer(1), Integer(1)}};
  for (const auto& mp : polys) {
    FieldPtr f = make_field(mp);
    AlgNum th = AlgNum::theta(f);
    AlgNum acc(f);
    for (std::size_t i = 0; i < mp.size(); ++i) acc += AlgNum(f, Rational(mp[i])) * th.pow(i);
    EXPECT_TRUE(acc.is_zero());
    for (int trial = 0; trial < 30; ++trial) {
      auto pts = testsupport::random_point(f, 3, g, 9);
      EXPECT_EQ((pts[0] * pts[1]) * pts[2], pts[0] * (pts[1] * pts[2]));
      EXPECT_EQ(pts[0] * (pts[1] + pts[2]), pts[0] * pts[1] + pts[0] * pts[2]);
      if (!pts[0].is_zero()) EXPECT_EQ(pts[0] * pts[0].inverse(), AlgNum(f, Rational(1)));
    }
  }
}

TEST(Compose, DirectSubstitution) {
  PolyReader r(Q(), {"x", "y"});
  EXPECT_EQ(poly_compose(r.map({"x + y", "y"}), r.map({"x", "x*y"})), r.map({"x + x*y", "x*y"}));
  PolyMap p = r.map({"x^3 - 2*y", "x*y + 7"});
  EXPECT_EQ(poly_compose(PolyMap::identity(Q(), 2), p), p);
  EXPECT_EQ(poly_compose(p, PolyMap::identity(Q(), 2)), p);
}

TEST(Compose, FibonacciSquareMatchesEvaluation) {
  PolyReader r(Q(), {"x", "y"});
  PolyMap fib = r.map({"y", "x + y"});
  PolyMap sq = poly_compose(fib, fib);
  EXPECT_EQ(sq, r.map({"x + y", "x + 2*y"}));
  std::mt19937_64 g(5);
  for (int t = 0; t < 5; ++t) {
    auto pt = testsupport::random_point(Q(), 2, g, 100);
    EXPECT_EQ(evaluate_map(sq, pt), evaluate_map(fib, evaluate_map(fib, pt)));
  }
}

TEST(Compose, ArityMismatch) {
  PolyReader r2(Q(), {"x", "y"});
  PolyReader r1(Q(), {"x"});
  EXPECT_EQ(testsupport::error_code_of([&] { poly_compose(r2.map({"x", "y"}), r1.map({"x"})); }),
            ErrorCode::ArityMismatch);
}

TEST(JacobianTest, Examples) {
  PolyReader r(Q(), {"x", "y"});
  PolyMatrix j = jacobian(r.map({"x", "y + x^2"}));
  EXPECT_EQ(j[0][0], r.read("1"));
  EXPECT_EQ(j[0][1], r.read("0"));
  EXPECT_EQ(j[1][0], r.read("2*x"));
  EXPECT_EQ(j[1][1], r.read("1"));
  EXPECT_EQ(det_polymatrix(j), r.read("1"));

  PolyMatrix id = jacobian(PolyMap::identity(Q(), 3));
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(id[a][b], MultiPoly::constant(Q(), 3, AlgNum(Q(), Rational(a == b))));

  PolyMatrix fib = jacobian(r.map({"y", "x + y"}));
  EXPECT_EQ(fib[0][0], r.read("0"));
  EXPECT_EQ(fib[1][1], r.read("1"));
  EXPECT_EQ(det_polymatrix(fib), r.read("-1"));
}

TEST(Determinant, NonSquareRejected) {
  PolyReader r(Q(), {"x"});
  PolyMatrix m = {{r.read("x"), r.read("1")}};
  EXPECT_EQ(testsupport::error_code_of([&] { det_polymatrix(m); }), ErrorCode::InvalidArgument);
}

TEST(Determinant, OmegaMapJacobianIsOmega) {
  for (int k : {2, 3}) {
    OmegaMap s = omega_map(k);
    PolyMatrix jac = jacobian(s.sigma);
    MultiPoly det = det_polymatrix(jac);
    EXPECT_EQ(det, MultiPoly::constant(s.field, 4, AlgNum::theta(s.field)));
    std::mt19937_64 g(100 + k);
    for (int t = 0; t < 3; ++t) {
      auto pt = testsupport::random_point(s.field, 4, g, 50);
      std::vector<std::vector<AlgNum>> num(4);
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) num[a].push_back(jac[a][b].evaluate(pt));
      EXPECT_EQ(numeric_det(num), AlgNum::theta(s.field));
    }
  }
}

TEST(Validate, Examples) {
  PolyReader r(Q(), {"x", "y"});
  AutomorphismCert c = validate_automorphism(r.map({"x", "y + x^2"}), r.map({"x", "y - x^2"}));
  EXPECT_EQ(c.jac_det, AlgNum(Q(), Rational(1)));

  PolyReader r1(Q(), {"x"});
  EXPECT_EQ(testsupport::error_code_of([&] { validate_automorphism(r1.map({"x^2"}), r1.map({"x"})); }),
            ErrorCode::NotInverse);
  // One-sided inverse only fails too: compositions are checked both ways.
  EXPECT_EQ(testsupport::error_code_of([&] { validate_automorphism(r.map({"x", "y"}), r.map({"x", "2*y"})); }),
            ErrorCode::NotInverse);

  for (int k : {2, 3}) {
    OmegaMap s = omega_map(k);
    AutomorphismCert cert = validate_automorphism(s.sigma, s.sigma_inv);
    EXPECT_EQ(cert.jac_det, AlgNum::theta(s.field));
  }
}

TEST(Evaluate, Examples) {
  PolyReader r(Q(), {"x", "y"});
  using testsupport::point;
  EXPECT_EQ(evaluate_map(r.map({"y", "x + y"}), point(Q(), {0, 1})), point(Q(), {1, 1}));
  EXPECT_EQ(evaluate_map(r.map({"x + y", "x*y"}), point(Q(), {2, 3})), point(Q(), {5, 6}));
  auto q = point(Q(), {-4, 9});
  EXPECT_EQ(evaluate_map(PolyMap::identity(Q(), 2), q), q);
}

TEST(Properties, ComposeAssociative) {
  std::mt19937_64 g(2024);
  std::uniform_int_distribution<int> c(-3, 3);
  auto random_map = [&](std::size_t n) {
    std::vector<MultiPoly> comps;
    for (std::size_t i = 0; i < n; ++i) {
      MultiPoly p(Q(), n);
      for (int t = 0; t < 4; ++t) {
        Exponents e(n, 0);
        const int deg = std::uniform_int_distribution<int>(0, 2)(g);
        for (int b = 0; b < deg; ++b) e[std::uniform_int_distribution<std::size_t>(0, n - 1)(g)] += 1;
        p.add_term(e, AlgNum(Q(), Rational(c(g))));
      }
      comps.push_back(p);
    }
    return PolyMap(comps);
  };
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + trial % 3;
    PolyMap a = random_map(n), b = random_map(n), d = random_map(n);
    PolyMap left = poly_compose(poly_compose(a, b), d);
    PolyMap right = poly_compose(a, poly_compose(b, d));
    EXPECT_EQ(left, right);
    for (int t = 0; t < 10; ++t) {
      auto pt = testsupport::random_point(Q(), n, g, 10);
      EXPECT_EQ(evaluate_map(left, pt), evaluate_map(a, evaluate_map(b, evaluate_map(d, pt))));
    }
  }
}

TEST(Properties, InverseRoundTripAndChainRule) {
  std::mt19937_64 g(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 3;
    auto aut = testsupport::random_triangular(Q(), n, g);
    AutomorphismCert cert = validate_automorphism(aut.forward, aut.inverse);
    for (int t = 0; t < 20; ++t) {
      std::vector<AlgNum> pt;
      for (std::size_t i = 0; i < n; ++i)
        pt.emplace_back(Q(), Rational(std::uniform_int_distribution<int>(-50, 50)(g),
                                      std::uniform_int_distribution<int>(1, 9)(g)));
      for (auto& x : pt) {
        Rational v = x.rational_part();
        v.canonicalize();
        x = AlgNum(Q(), v);
      }
      EXPECT_EQ(evaluate_map(cert.forward, evaluate_map(cert.inverse, pt)), pt);
    }
    MultiPoly df = det_polymatrix(jacobian(cert.forward));
    MultiPoly dg = substitute(det_polymatrix(jacobian(cert.inverse)), cert.forward);
    EXPECT_EQ(df * dg, MultiPoly::constant(Q(), n, AlgNum(Q(), Rational(1))));
  }
}

TEST(Properties, OmegaMapChainRule) {
  for (int k : {2, 3}) {
    OmegaMap s = omega_map(k);
    MultiPoly df = det_polymatrix(jacobian(s.sigma));
    MultiPoly dg = substitute(det_polymatrix(jacobian(s.sigma_inv)), s.sigma);
    EXPECT_EQ(df * dg, MultiPoly::constant(s.field, 4, AlgNum(s.field, Rational(1))));
  }
}
