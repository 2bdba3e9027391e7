#include <gtest/gtest.h>

#include "analytica/series_engine.hpp"
#include "oracles.hpp"

using namespace analytica;

namespace {

const Expression X = Expression::variable(0), Y = Expression::variable(1);
Expression c(Rational q) { return Expression::constant(std::move(q)); }

PolynomialMap line(std::vector<Rational> a) { return {1, {Polynomial::univariate(std::move(a))}}; }

TruncatedSeries univariate(std::vector<Rational> a, int K) { return {Polynomial::univariate(std::move(a)), K}; }

} // namespace

TEST(TruncatedSeries, ExpMatchesPowerSumOracle) {
  const std::vector<Rational> u{Rational(0), Rational(1, 2), Rational(-2), Rational(0), Rational(3)};
  const TruncatedSeries e = univariate(u, 15).exp_no_constant();
  const auto o = oracle::exp(u, 16);
  for (int k = 0; k <= 15; ++k) EXPECT_EQ(e.coefficient(k), o[static_cast<std::size_t>(k)]) << k;
}

TEST(TruncatedSeries, PowerAndInverseMatchBinomialOracle) {
  const std::vector<Rational> u{Rational(0), Rational(2), Rational(1, 3)};
  for (const Rational& a : {Rational(1, 3), Rational(-5, 2), Rational(4)}) {
    const TruncatedSeries p = univariate(u, 12).one_plus_pow(a);
    const auto o = oracle::binomial(a, u, 13);
    for (int k = 0; k <= 12; ++k) EXPECT_EQ(p.coefficient(k), o[static_cast<std::size_t>(k)]);
  }
  const TruncatedSeries s = univariate({Rational(3), Rational(1), Rational(-1)}, 20);
  const TruncatedSeries one = s * s.inverse();
  EXPECT_EQ(one, TruncatedSeries::constant(1, Rational(1), 20));
  EXPECT_THROW(univariate({Rational(0), Rational(1)}, 5).inverse(), PoleAtOriginError);
}

TEST(TruncatedSeries, MultivariateExpIsMultiplicative) {
  const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const TruncatedSeries a(x * Rational(2) - y, 8), b(x * y + y * Rational(1, 2), 8);
  EXPECT_EQ((a + b).exp_no_constant(), a.exp_no_constant() * b.exp_no_constant());
}

TEST(RadiusEstimate, GeometricSeries) {
  // 1/(1 - 2t): coefficients 2^k, radius 1/2
  const TruncatedSeries g = univariate({Rational(1), Rational(-2)}, 40).inverse();
  const RadiusEstimate r = radius_estimate(g);
  EXPECT_NEAR(r.radius, 0.5, 1e-12);
  EXPECT_FALSE(r.divergent);
  EXPECT_THROW(radius_estimate(univariate({Rational(1), Rational(1)}, 40)), InconclusiveError);
}

TEST(Expression, IntervalEvaluationAndDomain) {
  const Expression f = exp(X) / (c(Rational(1)) - Y);
  const RationalVector pt{Rational(0), Rational(1, 2)};
  const Interval v = f.evaluate(std::span<const Rational>(pt), 128);
  EXPECT_NEAR(v.mid(), 2.0, 1e-30);
  const RationalVector neg{Rational(-1)};
  EXPECT_THROW(pow(X, Rational(1, 2)).evaluate(std::span<const Rational>(neg), 64), DomainError);
  EXPECT_EQ(functions::flat_bump().arity(), 2U);
}

TEST(Composite, TaylorOfSmoothFunctions) {
  // exp(x) along x = t + t^2
  const CompositeGerm g = taylor_of_composite(exp(X), line({Rational(0), Rational(1), Rational(1)}), 10);
  ASSERT_TRUE(std::holds_alternative<TruncatedSeries>(g));
  const auto o = oracle::exp({Rational(0), Rational(1), Rational(1)}, 11);
  for (int k = 0; k <= 10; ++k) EXPECT_EQ(std::get<TruncatedSeries>(g).coefficient(k), o[static_cast<std::size_t>(k)]);
  // e^(1 + t) = e * e^t: the e factor rides along
  const CompositeGerm h = taylor_of_composite(exp(X), line({Rational(1), Rational(1)}), 6);
  EXPECT_EQ(std::get<TruncatedSeries>(h).exp_scale(), Rational(1));
  EXPECT_EQ(std::get<TruncatedSeries>(h).coefficient(3), Rational(1, 6));
}

TEST(Composite, PowersOfSquaresAndRationalRoots) {
  // sqrt(4 t^4 (1 + t)) = 2 t^2 (1 + t)^(1/2)
  const PolynomialMap p = line({Rational(0), Rational(0), Rational(0), Rational(0), Rational(4), Rational(4)});
  const CompositeGerm g = taylor_of_composite(pow(X, Rational(1, 2)), p, 8);
  const auto o = oracle::binomial(Rational(1, 2), {Rational(0), Rational(1)}, 7);
  for (int k = 2; k <= 8; ++k)
    EXPECT_EQ(std::get<TruncatedSeries>(g).coefficient(k), 2 * o[static_cast<std::size_t>(k - 2)]);
  // sqrt(t^2 (4 + 4t)) has odd k a and is not analytic: inconclusive
  const AnalyticityVerdict v =
      classify_analyticity(pow(X, Rational(1, 2)), line({Rational(0), Rational(0), Rational(4), Rational(4)}));
  EXPECT_EQ(v.tag, AnalyticityVerdict::Tag::Inconclusive);
}

TEST(Analyticity, FlatBumpAlongHornWitness) {
  const PolynomialMap w(1, {Polynomial::monomial({2}, Rational(1)), Polynomial::monomial({4}, Rational(1))});
  const AnalyticityVerdict v = classify_analyticity(functions::flat_bump(), w);
  ASSERT_EQ(v.tag, AnalyticityVerdict::Tag::FlatNonzero);
  EXPECT_EQ(v.witness_t, Rational(1, 10));
  // log10 exp(-1/(t^4 + t^8)) at t = 1/10
  const double expect = -1.0 / (1e-4 + 1e-8) / std::log(10.0);
  EXPECT_NEAR(v.value_log10, expect, 1e-3);
}

TEST(Analyticity, FlatPatternAlongOddOrderIsAPole) {
  EXPECT_THROW(classify_analyticity(exp(-(c(Rational(1)) / X)), line({Rational(0), Rational(1)})), PoleAtOriginError);
  EXPECT_THROW(classify_analyticity(c(Rational(1)) / X, line({Rational(0), Rational(1)})), PoleAtOriginError);
}

TEST(Analyticity, CuspRootRecoversTheParameterFunction) {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    std::vector<Rational> a(6, Rational(0));
    for (auto& q : a) q = rng.rational(5);
    const Polynomial g = Polynomial::univariate(a);
    if (g.is_zero()) continue;
    const AnalyticityVerdict v = classify_analyticity(functions::cusp_cube_root(), PolynomialMap(1, {g.pow(2), g.pow(3)}));
    ASSERT_EQ(v.tag, AnalyticityVerdict::Tag::PolynomialExact);
    EXPECT_EQ(*v.polynomial, g);
  }
  // off the curve the root is undefined
  EXPECT_THROW(classify_analyticity(functions::cusp_cube_root(), PolynomialMap(1, {Polynomial::monomial({2}, Rational(1)),
                                                                                    Polynomial::monomial({2}, Rational(1))})),
               DomainError);
}

TEST(Analyticity, GeometricEvidenceAndPolynomialExact) {
  const AnalyticityVerdict g = classify_analyticity(functions::geometric(), line({Rational(0), Rational(1)}));
  ASSERT_EQ(g.tag, AnalyticityVerdict::Tag::AnalyticEvidence);
  EXPECT_NEAR(g.radius->radius, 1.0, 1e-12);
  const AnalyticityVerdict p = classify_analyticity(X * X, line({Rational(0), Rational(0), Rational(0), Rational(1)}));
  ASSERT_EQ(p.tag, AnalyticityVerdict::Tag::PolynomialExact);
  EXPECT_EQ(*p.polynomial, Polynomial::monomial({6}, Rational(1)));
}

TEST(Analyticity, LineRestrictions) {
  const PolynomialMap id = PolynomialMap::identity(2);
  const auto v = line_restriction_check(functions::geometric(), id,
                                        {{{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1)}},
                                         {{Rational(1, 2), Rational(0)}, {Rational(1), Rational(0)}}});
  ASSERT_EQ(v.size(), 2U);
  EXPECT_NEAR(v[0].radius->radius, 2.0, 1e-9);  // 1/(1 - t/2)
  EXPECT_NEAR(v[1].radius->radius, 0.5, 1e-9);  // 1/(1/2 - t)
}
