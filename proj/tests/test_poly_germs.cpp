#include <gtest/gtest.h>

#include "analytica/poly_germs.hpp"
#include "oracles.hpp"

using namespace analytica;

namespace {

PolynomialMap curve(std::vector<Rational> a, std::vector<Rational> b) {
  return {1, {Polynomial::univariate(a), Polynomial::univariate(b)}};
}

PolynomialMap random_plot(Rng& rng, int degree) {
  std::vector<Rational> a(static_cast<std::size_t>(degree) + 1, Rational(0)), b = a;
  for (int i = 1; i <= degree; ++i) {
    a[static_cast<std::size_t>(i)] = rng.uniform_int(-2, 2);
    b[static_cast<std::size_t>(i)] = rng.uniform_int(-2, 2);
  }
  return curve(a, b);
}

} // namespace

TEST(BinomialSeries, MatchesGeneralizedBinomialOracle) {
  const std::vector<Rational> u{Rational(0), Rational(3, 2), Rational(-1), Rational(1, 3)};
  for (const Rational& e : {Rational(1, 2), Rational(-3, 2), Rational(5), Rational(-1)}) {
    const auto f = detail::binomial_series(u, SurdRational(e), 20);
    const auto o = oracle::binomial(e, u, 20);
    for (std::size_t k = 0; k < 20; ++k) EXPECT_EQ(f[k], SurdRational(o[k])) << "e=" << e << " k=" << k;
  }
}

TEST(BinomialSeries, IrrationalExponentSatisfiesItsRecurrence) {
  // (1+t)^sqrt2 has coefficients binom(sqrt2, k) = prod (sqrt2 - j) / k!
  const std::vector<Rational> u{Rational(0), Rational(1)};
  const auto f = detail::binomial_series(u, SurdRational::sqrt2(), 8);
  SurdRational c(Rational(1));
  for (long k = 0; k < 8; ++k) {
    EXPECT_EQ(f[static_cast<std::size_t>(k)], c);
    c = c * (SurdRational::sqrt2() - SurdRational(Rational(k))) * SurdRational(Rational(1, k + 1));
  }
}

TEST(GermInSet, HornWitnessAndNeighbours) {
  const CuspidalSet H = CuspidalSet::horn(2);
  const Rational z(0), one(1);
  EXPECT_TRUE(germ_in_set(curve({z, z, one}, {z, z, z, z, one}), H).certified());
  EXPECT_TRUE(germ_in_set(curve({z, z, one}, {z, z, z, z, Rational(2)}), H).certified());
  EXPECT_TRUE(germ_in_set(curve({z, z, one}, {z, z, z, z, Rational(5, 2)}), H).refuted());
  EXPECT_TRUE(germ_in_set(curve({z, z, one}, {z, z, z, one}), H).refuted());
  // equality of leading orders decided by the next term: y = x^2 + t^5 fails for t < 0
  EXPECT_TRUE(germ_in_set(curve({z, z, one}, {z, z, z, z, one, one}), H).refuted());
  EXPECT_TRUE(germ_in_set(curve({z, z, one}, {z, z, z, z, one, z, one}), H).certified());
}

TEST(GermInSet, RefutationWitnessIsExactlyOutside) {
  Rng rng(17);
  const CuspidalSet H = CuspidalSet::horn(1);
  for (int i = 0; i < 200; ++i) {
    const PolynomialMap p = random_plot(rng, 3);
    const ContainmentVerdict v = germ_in_set(p, H);
    if (v.refuted()) {
      EXPECT_EQ(classify(H, v.witness_point), Membership::Outside);
      EXPECT_EQ(p.evaluate(std::span<const Rational>(v.witness_param)), v.witness_point);
    } else {
      // certified germs stay inside on a small punctured neighbourhood
      for (int k = 12; k <= 16; ++k)
        for (int s : {1, -1}) {
          const Rational t[1] = {Rational(s, Integer(1) << k)};
          EXPECT_NE(classify(H, p.evaluate(std::span<const Rational>(t, 1))), Membership::Outside);
        }
    }
  }
}

TEST(GermInSet, IrrationalOrdersAreComparedExactly) {
  const CuspidalSet X = CuspidalSet::irrational_cusp();
  const Rational z(0), one(1);
  // (t^2, t^3): x^sqrt2 ~ t^2.83 < t^3, the lower bound fails
  const ContainmentVerdict v = germ_in_set(curve({z, z, one}, {z, z, z, one}), X);
  EXPECT_TRUE(v.refuted());
  EXPECT_EQ(classify(X, v.witness_point), Membership::Outside);
  // the constant map at the apex is a germ in X
  EXPECT_TRUE(germ_in_set(curve({z}, {z}), X).certified());
}

TEST(GermInSet, CuspCurveEquality) {
  const Polynomial g = Polynomial::univariate({Rational(1, 2), Rational(-1), Rational(0), Rational(2)});
  EXPECT_TRUE(germ_in_set(PolynomialMap(1, {g.pow(2), g.pow(3)}), CuspidalSet::cusp_curve()).certified());
  EXPECT_TRUE(germ_in_set(PolynomialMap(1, {g.pow(2), g.pow(3) * Rational(2)}), CuspidalSet::cusp_curve()).refuted());
}

TEST(GermInSet, UnionMembersPerSide) {
  const CuspidalSet U = CuspidalSet::set_union(
      {CuspidalSet::orthant(2), CuspidalSet::half_space({Rational(1), Rational(0)}, Rational(0))});
  const Rational z(0), one(1);
  // t >= 0 side lies in the orthant, t <= 0 side in {x <= 0}
  EXPECT_TRUE(germ_in_set(curve({z, one}, {z, z, one}), U).certified());
  EXPECT_TRUE(germ_in_set(curve({z, one}, {z, -one}), U).refuted());
}

TEST(GermInSet, DimensionChecks) {
  EXPECT_THROW(germ_in_set(PolynomialMap::identity(2), CuspidalSet::horn(1)), DimensionError);
  EXPECT_THROW(germ_in_set(PolynomialMap(1, {Polynomial(1)}), CuspidalSet::horn(1)), DimensionError);
}

TEST(GermInSetSampled, TwoParameterMaps) {
  const Polynomial s = Polynomial::variable(2, 0), u = Polynomial::variable(2, 1);
  const PolynomialMap inside(2, {s * s + u * u, s * s + u * u});
  EXPECT_EQ(germ_in_set_sampled(inside, CuspidalSet::orthant(2), Rational(1, 2), 300, 4).tag,
            ContainmentVerdict::Tag::SampledEvidence);
  const PolynomialMap outside(2, {s, u * u});
  const ContainmentVerdict v = germ_in_set_sampled(outside, CuspidalSet::orthant(2), Rational(1, 2), 300, 4);
  EXPECT_TRUE(v.refuted());
  EXPECT_EQ(classify(CuspidalSet::orthant(2), v.witness_point), Membership::Outside);
}

TEST(Plot, MakeRejectsNonPlots) {
  const Rational z(0), one(1);
  EXPECT_NO_THROW(Plot::make(curve({z, z, one}, {z, z, one}), CuspidalSet::horn(1)));
  EXPECT_THROW(Plot::make(curve({z, one}, {z, one}), CuspidalSet::horn(1)), DomainError);
}

TEST(MinPlotDegree, Thresholds) {
  for (int D = 1; D <= 3; ++D) {
    const PlotDegreeResult r = min_plot_degree_through_origin(CuspidalSet::horn(D));
    ASSERT_TRUE(r.degree);
    EXPECT_EQ(*r.degree, 2 * D);
    EXPECT_FALSE(r.trace.empty());
    EXPECT_TRUE(germ_in_set(*r.witness, CuspidalSet::horn(D)).certified());
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    EXPECT_TRUE(min_plot_degree_through_origin(CuspidalSet::orthant(n), 1).no_nonconstant_plot());
    EXPECT_EQ(min_plot_degree_through_origin(CuspidalSet::orthant(n)).degree, 2);
  }
  EXPECT_TRUE(min_plot_degree_through_origin(CuspidalSet::irrational_cusp()).no_nonconstant_plot());
  EXPECT_THROW(min_plot_degree_through_origin(CuspidalSet::cusp_curve()), UnsupportedError);
}

TEST(MinPlotDegree, HornLowDegreePlotsAllFail) {
  // independent check: along every random degree-(2D-1) plot some small t
  // leaves the horn in floating point as well
  Rng rng(8);
  for (int D = 1; D <= 3; ++D) {
    for (int i = 0; i < 50; ++i) {
      const PolynomialMap p = random_plot(rng, 2 * D - 1);
      if (p[0].is_zero() && p[1].is_zero()) continue;
      EXPECT_TRUE(germ_in_set(p, CuspidalSet::horn(D)).refuted());
      bool left = false;
      for (int k = 4; k <= 20 && !left; ++k)
        for (double t : {std::ldexp(1.0, -k), -std::ldexp(1.0, -k)}) {
          const Rational tq[1] = {Rational(t)};
          const RationalVector x = p.evaluate(std::span<const Rational>(tq, 1));
          left = left || !oracle::in_horn(x[0].get_d(), x[1].get_d(), D);
        }
      EXPECT_TRUE(left);
    }
  }
}
