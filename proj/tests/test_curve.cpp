// Group law on short Weierstrass curves, and the family construction.

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace ecfam;

namespace {

const Curve kE2(-4, 53361);  // m = 2, pqr = 231

Point pt(long x, long y) { return Point(Integer(x), Integer(y)); }

}  // namespace

TEST(Curve, Construction) {
  EXPECT_EQ(make_curve(-1, 0).discriminant(), 64);
  EXPECT_THROW(make_curve(0, 0), SingularCurve);
  EXPECT_THROW(make_curve(-3, 2), SingularCurve);  // (x - 1)^2 (x + 2)
  EXPECT_EQ(make_curve(0, 1).discriminant(), -432);
  EXPECT_EQ(kE2.discriminant(), Integer("-1230075206576"));
  EXPECT_EQ(discriminant(kE2), family_discriminant({2, 3, 7, 11}));
}

TEST(Curve, Membership) {
  EXPECT_TRUE(is_on_curve(kE2, pt(0, 231)));
  EXPECT_TRUE(is_on_curve(kE2, pt(2, 231)));
  EXPECT_FALSE(is_on_curve(kE2, pt(1, 1)));
  EXPECT_TRUE(is_on_curve(kE2, Point::infinity()));
  EXPECT_THROW(add(kE2, pt(1, 1), pt(0, 231)), PointNotOnCurve);
  EXPECT_THROW(negate(kE2, pt(1, 1)), PointNotOnCurve);
}

TEST(Curve, PointsCanonicalize) {
  const Point p(make_rational(4, 2), make_rational(-462, -2));
  EXPECT_EQ(p, pt(2, 231));
  EXPECT_TRUE(p.is_integral());
  EXPECT_EQ(to_string(Point::infinity()), "O");
  EXPECT_EQ(to_string(pt(-2, -231)), "(-2, -231)");
}

TEST(GroupLaw, WorkedExamples) {
  const Point a = pt(0, 231);
  const Point b = pt(2, 231);
  EXPECT_EQ(add(kE2, a, Point::infinity()), a);
  EXPECT_TRUE(add(kE2, a, pt(0, -231)).is_infinity());
  EXPECT_EQ(add(kE2, a, b), pt(-2, -231));
  EXPECT_EQ(negate(kE2, a), pt(0, -231));
  EXPECT_TRUE(negate(kE2, Point::infinity()).is_infinity());
  EXPECT_EQ(negate(kE2, b), pt(2, -231));
  EXPECT_EQ(double_point(kE2, a).x(), make_rational(4, 53361));
  EXPECT_EQ(double_point(kE2, b).x(), make_rational(-213428, 53361));
  EXPECT_EQ(scalar_mul(kE2, 2, b), double_point(kE2, b));
  EXPECT_EQ(scalar_mul(kE2, 1, b), b);
  EXPECT_TRUE(scalar_mul(kE2, 0, b).is_infinity());
  EXPECT_EQ(scalar_mul(kE2, -3, b), negate(kE2, scalar_mul(kE2, 3, b)));
  EXPECT_TRUE(double_point(make_curve(-1, 0), pt(0, 0)).is_infinity());
  const Curve e(0, 1);
  EXPECT_TRUE(scalar_mul(e, 6, pt(2, 3)).is_infinity());
  EXPECT_FALSE(scalar_mul(e, 3, pt(2, 3)).is_infinity());
}

TEST(GroupLaw, ChordThroughCanonicalPoints) {
  // y = 231 meets the curve where x^3 - 4x = 0; the third point is x = -2.
  const Polynomial chord(std::vector<Integer>{0, -4, 0, 1});
  EXPECT_EQ(integer_roots(chord), (std::vector<Integer>{-2, 0, 2}));
}

TEST(GroupLaw, RandomizedLaws) {
  std::mt19937_64 rng(2024);
  int checks = 0;
  for (int c = 0; c < 40; ++c) {
    auto [curve, base] = oracle::random_curve_with_points(rng);
    std::vector<Point> pool{Point::infinity()};
    for (std::size_t i = 0; i < std::min<std::size_t>(base.size(), 4); ++i) {
      pool.push_back(base[i]);
      pool.push_back(double_point(curve, base[i]));
    }
    pool.push_back(add(curve, base[0], base[1]));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < 100; ++t) {
      const Point& p = pool[pick(rng)];
      const Point& q = pool[pick(rng)];
      const Point& r = pool[pick(rng)];
      const Point pq = add(curve, p, q);
      ASSERT_TRUE(is_on_curve(curve, pq));
      ASSERT_EQ(add(curve, pq, r), add(curve, p, add(curve, q, r))) << curve.to_string();
      ASSERT_EQ(pq, add(curve, q, p));
      ASSERT_EQ(add(curve, p, Point::infinity()), p);
      ASSERT_TRUE(add(curve, p, negate(curve, p)).is_infinity());
      ASSERT_EQ(scalar_mul(curve, 3, p), add(curve, p, double_point(curve, p)));
      ++checks;
    }
  }
  EXPECT_EQ(checks, 4000);
}

TEST(GroupLaw, ClosedFormDoublingMatchesTangent) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 60; ++i) {
    const auto params = oracle::random_family(rng);
    const Curve curve = build_family_curve(params);
    for (int a = -2; a <= 2; ++a) {
      for (int b = -1; b <= 1; ++b) {
        const Point p = oracle::family_combination(curve, params, a, b);
        if (p.is_infinity() || p.y() == 0) continue;
        const Point twice = double_point(curve, p);
        ASSERT_EQ(family_double_closed_form(params.m, params.pqr(), p), twice);
        ASSERT_EQ(family_quadruple_closed_form(params.m, params.pqr(), p), scalar_mul(curve, 4, p));
      }
    }
  }
}

TEST(GroupLaw, PrintedDoublingSignIsOffCurve) {
  // The literal second line, y' = -y - lambda (x - x'), leaves the curve.
  const Point p = pt(0, 231);
  const Rational x = p.x(), y = p.y();
  const Rational lambda = (3 * x * x - 4) / (2 * y);
  const Point fixed = family_double_closed_form(2, 231, p);
  const Rational printed_y = -y - lambda * (x - fixed.x());
  EXPECT_NE(printed_y * printed_y, kE2.rhs(fixed.x()));
  EXPECT_TRUE(is_on_curve(kE2, fixed));
}

TEST(Family, HypothesisFlags) {
  const auto ok = validate_hypotheses({2, 3, 7, 11});
  EXPECT_TRUE(ok.all());
  const auto h3 = validate_hypotheses({3, 3, 7, 11});
  EXPECT_FALSE(h3.mod3_ok);
  EXPECT_FALSE(h3.coprime_ok);
  EXPECT_TRUE(h3.primes_ok);
  const auto h6 = validate_hypotheses({6, 5, 7, 11});
  EXPECT_FALSE(h6.mod3_ok);
  EXPECT_FALSE(h6.mod2k_ok);
  EXPECT_TRUE(h6.coprime_ok);
}

TEST(Family, ValidationErrors) {
  EXPECT_THROW(validate_hypotheses({2, 9, 7, 11}), NotPrime);
  EXPECT_THROW(validate_hypotheses({2, 3, 3, 5}), PrimesNotDistinct);
  EXPECT_THROW(validate_hypotheses({2, 2, 3, 5}), PrimeIsTwo);
  EXPECT_THROW(validate_hypotheses({0, 3, 5, 7}), InvalidParameter);
  EXPECT_THROW(build_family_curve({2, 3, 3, 5}), PrimesNotDistinct);
  const auto flags = hypothesis_flags({2, 9, 7, 11});
  EXPECT_FALSE(flags.primes_ok);
}

TEST(Family, BuildAndCanonicalPoints) {
  const Curve e = build_family_curve({2, 3, 7, 11});
  EXPECT_EQ(e.b(), -4);
  EXPECT_EQ(e.c(), 53361);
  const Curve e34 = build_family_curve({34, 3, 5, 7});
  EXPECT_EQ(e34.b(), -1156);
  EXPECT_EQ(e34.c(), 11025);
  const auto pts = canonical_points({2, 3, 7, 11});
  EXPECT_EQ(pts.a, pt(0, 231));
  EXPECT_EQ(pts.b, pt(2, 231));
  EXPECT_EQ(pts.sum, pt(-2, -231));
}

TEST(Family, GridProperties) {
  for (long m = 1; m <= 200; ++m) {
    for (const auto& [p, q, r] : {std::tuple{3, 5, 7}, std::tuple{5, 11, 13}, std::tuple{3, 17, 23}}) {
      const FamilyParams params{m, p, q, r};
      const Curve e = build_family_curve(params);
      const auto pts = canonical_points(params);
      ASSERT_TRUE(is_on_curve(e, pts.a));
      ASSERT_TRUE(is_on_curve(e, pts.b));
      ASSERT_TRUE(is_on_curve(e, pts.sum));
      ASSERT_EQ(e.discriminant(), family_discriminant(params));
      const auto h = hypothesis_flags(params);
      if (h.mod2k_ok) {
        for (unsigned k : {2U, 3U, 4U}) ASSERT_TRUE(congruent_two_mod_power_of_two(params.m, k));
      }
      ASSERT_EQ(h.mod3_ok, m % 3 != 0);
      ASSERT_EQ(h.coprime_ok, m % p != 0 && m % q != 0 && m % r != 0);
    }
  }
}

TEST(Family, KWitness) {
  EXPECT_EQ(FamilyParams({34, 3, 5, 7}).k_witness(), 5UL);
  EXPECT_EQ(FamilyParams({66, 3, 5, 7}).k_witness(), 6UL);
  EXPECT_EQ(FamilyParams({6, 5, 7, 11}).k_witness(), 2UL);
  EXPECT_EQ(FamilyParams({4, 3, 5, 7}).k_witness(), 0UL);
  EXPECT_FALSE(FamilyParams({2, 3, 5, 7}).k_witness());
}
