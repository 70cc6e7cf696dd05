#include <gtest/gtest.h>

#include <cmath>

#include "mde/heights.hpp"

using namespace mde;

namespace {

const Curve kE(0, 2);
const Point<Rational> kG = Point<Rational>::affine(Rational(-1), Rational(1));

// 3/2 h(x([2^k] P)) / 4^k by exact rational doubling.
double exact_doubling_estimate(const Curve& E, const Point<Rational>& P, int k) {
  const auto M = model_q(E);
  Point<Rational> Q = P;
  for (int i = 0; i < k; ++i) Q = dbl(M, Q);
  return 1.5 * weil_height(Q.x) / std::ldexp(1.0, 2 * k);
}

}  // namespace

TEST(WeilHeight, Rationals) {
  EXPECT_DOUBLE_EQ(weil_height(Rational(17, 4)), std::log(17.0));
  EXPECT_EQ(weil_height(Rational(0)), 0.0);
  EXPECT_NEAR(weil_height(Rational(-1728)), 7.4547, 1e-4);
  EXPECT_DOUBLE_EQ(weil_height(Rational(-71, 8)), std::log(71.0));
}

TEST(WeilHeight, QuadraticElements) {
  const KElement z = KElement::zeta();
  EXPECT_NEAR(weil_height(z * KElement(Rational(1, 2))), std::log(2.0), 1e-14);
  EXPECT_NEAR(weil_height((KElement(1) - z).inverse()), 0.5 * std::log(3.0), 1e-14);
  EXPECT_NEAR(weil_height(KElement(1) - z), 0.5 * std::log(3.0), 1e-14);
  EXPECT_EQ(weil_height(z), 0.0);
  const KElement a(Rational(3, 7), Rational(-5, 2));
  EXPECT_NEAR(weil_height(a), weil_height(a.inverse()), 1e-12);
  EXPECT_NEAR(weil_height(a), weil_height(a.conj()), 1e-12);
  EXPECT_NEAR(weil_height(a), weil_height(a * z), 1e-12);
  EXPECT_NEAR(weil_height(pow(a, 5)), 5 * weil_height(a), 1e-12);
}

TEST(PointHeights, Examples) {
  // (1 : 17/4 : -71/8) = (8 : 34 : -71)
  const auto P = Point<Rational>::affine(Rational(17, 4), Rational(-71, 8));
  EXPECT_DOUBLE_EQ(point_weil_height(P), std::log(71.0));
  EXPECT_NEAR(point_h2(P), 0.5 * std::log(64.0 + 34 * 34 + 71 * 71), 1e-14);
  EXPECT_NEAR(point_h2(kG), 0.5 * std::log(3.0), 1e-15);
  EXPECT_EQ(point_weil_height(Point<Rational>::at_infinity()), 0.0);
  EXPECT_NEAR(point_weil_height(to_k(P)), point_weil_height(P), 1e-14);
}

TEST(CE, Values) {
  EXPECT_NEAR(c_of_e(kE), std::log(1728.0) / 4 + std::log(2.0) / 2 + 4, 1e-14);
  EXPECT_NEAR(c_of_e(kE), 6.2103, 1e-4);
  EXPECT_LE(c_of_e(kE), 6.211);
  EXPECT_NEAR(c_of_e(Curve(0, 1)), std::log(432.0) / 4 + 4, 1e-14);
  EXPECT_THROW(Curve(0, 0), DomainError);
}

TEST(CanonicalHeight, Anchor) {
  const HeightValue h = canonical_height(kE, kG, 5e-4);
  EXPECT_LE(h.precision, 5e-4);
  EXPECT_NEAR(h.value, 1.1319, 5e-4);
  const HeightValue fine = canonical_height(kE, kG);
  EXPECT_LE(fine.precision, 1e-6);
  EXPECT_NEAR(fine.value, h.value, h.precision + fine.precision);
}

TEST(CanonicalHeight, AgreesWithExactDoubling) {
  const double bx = x_height_difference_bound(kE);
  for (const Curve& E : {kE, Curve(-2, 1), Curve(-7, 10)}) {
    Point<Rational> P;
    if (E.A() == 0) P = kG;
    else if (E.A() == -2) P = Point<Rational>::affine(Rational(0), Rational(1));
    else P = Point<Rational>::affine(Rational(1), Rational(2));
    ASSERT_TRUE(on_curve(model_q(E), P));
    const HeightValue h = canonical_height(E, P, 1e-8);
    for (int k = 3; k <= 7; ++k) {
      const double tail = 1.5 * x_height_difference_bound(E) / std::ldexp(1.0, 2 * k);
      EXPECT_NEAR(exact_doubling_estimate(E, P, k), h.value, tail + h.precision) << k;
    }
    // The fast and exact routes agree far more tightly than the tail bound.
    EXPECT_NEAR(exact_doubling_estimate(E, P, 7), h.value, 1e-3);
  }
  EXPECT_GT(bx, 0);
}

TEST(CanonicalHeight, Torsion) {
  const Curve E(0, 1);
  for (auto P : {Point<Rational>::affine(Rational(-1), Rational(0)),
                 Point<Rational>::affine(Rational(0), Rational(1)),
                 Point<Rational>::affine(Rational(2), Rational(3))}) {
    EXPECT_TRUE(is_torsion(E, P));
    EXPECT_EQ(canonical_height(E, P).value, 0.0);
  }
  EXPECT_FALSE(is_torsion(kE, kG));
  EXPECT_EQ(canonical_height(kE, Point<Rational>::at_infinity()).value, 0.0);
  EXPECT_THROW(canonical_height(kE, kG, 0.0), DomainError);
  EXPECT_THROW(canonical_height(kE, kG, -1.0), DomainError);
}

TEST(CanonicalHeight, Quadraticity) {
  const double eps = 1e-6;
  const auto M = model_q(kE);
  const Curve E2(-2, 1);
  const auto M2 = model_q(E2);
  const auto h = Point<Rational>::affine(Rational(0), Rational(1));
  for (const auto& [curve, model, P] :
       {std::tuple{kE, M, kG}, std::tuple{kE, M, scalar_mul(M, 3, kG)}, std::tuple{E2, M2, h}}) {
    const double base = canonical_height(curve, P, eps).value;
    for (long m = 1; m <= 8; ++m) {
      const double hm = canonical_height(curve, scalar_mul(model, m, P), eps).value;
      EXPECT_NEAR(hm, m * m * base, (1 + m * m) * eps) << m;
    }
  }
  const double g1 = canonical_height(kE, kG, eps).value;
  EXPECT_NEAR(canonical_height(kE, scalar_mul(M, 3, kG), eps).value, 9 * g1, 2 * eps);
}

TEST(CanonicalHeight, ParallelogramLaw) {
  const double eps = 1e-6;
  const auto M = model_q(kE);
  for (long a = 1; a <= 4; ++a) {
    for (long b = 1; b <= 4; ++b) {
      const auto P = scalar_mul(M, a, kG);
      const auto Q = scalar_mul(M, b, kG);
      const double lhs = canonical_height(kE, add(M, P, Q), eps).value +
                         canonical_height(kE, add(M, P, neg(Q)), eps).value;
      const double rhs = 2 * canonical_height(kE, P, eps).value + 2 * canonical_height(kE, Q, eps).value;
      EXPECT_NEAR(lhs, rhs, 4 * eps);
    }
  }
}

TEST(CanonicalHeight, EisensteinMultiples) {
  const double eps = 1e-6;
  const auto Mk = model_k(kE);
  const auto g = to_k(kG);
  const double hg = canonical_height(kE, kG, eps).value;
  const KElement z = KElement::zeta();
  for (long u = -2; u <= 2; ++u) {
    for (long v = -2; v <= 2; ++v) {
      const EisensteinInt c{BigInt(u), BigInt(v)};
      const auto P = eisenstein_mul(Mk, z, c, g);
      const double expected = c.norm().get_d() * hg;
      EXPECT_NEAR(canonical_height(kE, P, eps).value, expected, (1 + c.norm().get_d()) * eps)
          << u << " " << v;
    }
  }
}

TEST(CanonicalHeight, ComparisonWithProjectiveHeights) {
  const auto M = model_q(kE);
  const double ce = c_of_e(kE);
  for (long m = 1; m <= 10; ++m) {
    const auto P = scalar_mul(M, m, kG);
    const double hh = canonical_height(kE, P).value;
    EXPECT_LE(std::fabs(point_h2(P) - hh), ce) << m;
    EXPECT_LE(std::fabs(point_weil_height(P) - hh), ce) << m;
  }
}
