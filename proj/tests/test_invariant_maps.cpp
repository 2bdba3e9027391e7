#include <gtest/gtest.h>

#include "analytica/invariant_maps.hpp"
#include "oracles.hpp"

using namespace analytica;

TEST(Sigma, SecondComponentIsRealPartOfPower) {
  Rng rng(4);
  for (int d = 3; d <= 7; ++d) {
    const Polynomial s = sigma2(d);
    for (int i = 0; i < 20; ++i) {
      const Rational x = rng.rational(9), y = rng.rational(9);
      const RationalVector pt{x, y};
      EXPECT_NEAR(s.evaluate(pt).get_d(), oracle::re_power(x.get_d(), y.get_d(), d),
                  1e-9 * (1 + std::abs(oracle::re_power(x.get_d(), y.get_d(), d))));
    }
  }
  EXPECT_THROW(build_map(InvariantMapSpec::sigma_map(2)), DomainError);
}

TEST(Sigma, CircleMapsOntoSegment) {
  for (int d = 3; d <= 5; ++d)
    for (const Rational& r : {Rational(1, 10), Rational(1, 2), Rational(1)}) {
      const CircleReport c = verify_circle_to_segment(d, r, 360);
      EXPECT_TRUE(c.first_ok(1e-12));
      EXPECT_TRUE(c.bound_ok(1e-12));
      EXPECT_TRUE(c.attained_ok(1e-9));
      // r^d cos(d theta) sampled: the oracle value at theta = 0 is r^d
      EXPECT_NEAR(c.rows.front().y, std::pow(r.get_d(), d), 1e-15);
      EXPECT_EQ(c.rows.size(), 360U);
    }
}

TEST(GroupInvariance, SignFlipsReflectionsRotations) {
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(check_group_invariance(InvariantMapSpec::q_map(n)).passed());
  for (int d = 3; d <= 6; ++d) {
    const GroupInvarianceReport g = check_group_invariance(InvariantMapSpec::sigma_map(d));
    EXPECT_TRUE(g.passed(1e-12)) << d << " " << g.rotation_max_error;
    EXPECT_EQ(g.rotation_exact, d == 4);
  }
}

TEST(Factorization, QMapRecoversTheFactor) {
  const Expression x = Expression::variable(0), y = Expression::variable(1);
  const Expression g = exp(x) + x * y * Expression::constant(Rational(3)) - Expression::constant(Rational(1)) / (Expression::constant(Rational(2)) - y);
  const FactorizationReport f = invariant_factorization_check(g, InvariantMapSpec::q_map(2), 12);
  EXPECT_TRUE(f.support_ok);
  EXPECT_TRUE(f.residual_zero);
  // F(u, v) = e^u + 3uv - 1/(2 - v): coefficient of u^2 is 1/2, of v^3 is -1/16
  EXPECT_EQ(f.recovered.coefficient({2, 0}), Rational(1, 2));
  EXPECT_EQ(f.recovered.coefficient({0, 3}), Rational(-1, 16));
  EXPECT_EQ(f.recovered.coefficient({1, 1}), Rational(3));
}

TEST(Factorization, LinearAndProductFactors) {
  const Expression x = Expression::variable(0), y = Expression::variable(1);
  const FactorizationReport f = invariant_factorization_check(x, InvariantMapSpec::q_map(2), 6);
  EXPECT_TRUE(f.residual_zero);
  EXPECT_EQ(f.composite, Polynomial::monomial({2, 0}, Rational(1)));
  const FactorizationReport s = invariant_factorization_check(x * y, InvariantMapSpec::sigma_map(3), 8);
  EXPECT_TRUE(s.residual_zero);
  EXPECT_EQ(s.recovered, Polynomial::monomial({1, 1}, Rational(1)));
}

TEST(Factorization, SigmaRecoversFactorInInvariants) {
  const Expression u = Expression::variable(0), v = Expression::variable(1);
  const Expression g = exp(u) * (Expression::constant(Rational(1)) + v);
  for (int d = 3; d <= 5; ++d) {
    const FactorizationReport f = invariant_factorization_check(g, InvariantMapSpec::sigma_map(d), 12);
    EXPECT_TRUE(f.support_ok) << d;
    EXPECT_TRUE(f.residual_zero) << d;
    EXPECT_TRUE(f.remainder.is_zero());
  }
}
