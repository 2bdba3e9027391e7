#include <gtest/gtest.h>

#include "analytica/set_catalog.hpp"
#include "oracles.hpp"

using namespace analytica;

namespace {

RationalVector pt(Rational a, Rational b) { return {std::move(a), std::move(b)}; }

} // namespace

TEST(SetCatalog, HornMembershipMatchesFloatingOracleOffTheBoundary) {
  Rng rng(21);
  for (int D = 1; D <= 3; ++D) {
    const CuspidalSet H = CuspidalSet::horn(D);
    int inside = 0;
    for (int i = 0; i < 400; ++i) {
      const Rational x = rng.rational_in(Rational(-1, 4), Rational(5, 4));
      const Rational y = rng.rational_in(Rational(-1, 4), Rational(9, 4));
      const double xd = x.get_d(), yd = y.get_d();
      const double gap = std::min({std::abs(xd), std::abs(1 - xd), std::abs(yd - std::pow(xd, D)),
                                   std::abs(2 * std::pow(xd, D) - yd)});
      if (gap < 1e-9) continue;
      const bool expect = oracle::in_horn(xd, yd, D);
      EXPECT_EQ(contains(H, pt(x, y)), expect) << x << " " << y;
      inside += expect;
    }
    EXPECT_GT(inside, 5);
  }
}

TEST(SetCatalog, HornPointsAndSlack) {
  EXPECT_TRUE(contains(CuspidalSet::horn(2), pt(Rational(1, 2), Rational(3, 10))));
  EXPECT_FALSE(contains(CuspidalSet::horn(2), pt(Rational(1, 2), Rational(6, 10))));
  // min(x, 1 - x, y - x, 2x - y) at (1/2, 3/4)
  EXPECT_EQ(constraint_slack(CuspidalSet::horn(1), pt(Rational(1, 2), Rational(3, 4))), Rational(1, 4));
  EXPECT_EQ(constraint_slack(CuspidalSet::horn(1), pt(Rational(1, 2), Rational(1))), Rational(0));
  EXPECT_THROW(constraint_slack(CuspidalSet::horn(1), pt(Rational(1, 2), Rational(2))), DomainError);
}

TEST(SetCatalog, DeclaredCharacteristics) {
  EXPECT_EQ(CuspidalSet::horn(3).declared_chars().front().M, Rational(1, 112));
  EXPECT_EQ(CuspidalSet::holder_cusp(2).declared_chars().front().M, Rational(1, 12));
  EXPECT_EQ(CuspidalSet::standard_simplex(3).declared_chars().front().M, Rational(1, 6));
  EXPECT_TRUE(CuspidalSet::irrational_cusp().declared_chars().empty());
  EXPECT_FALSE(CuspidalSet::irrational_cusp().simple());
}

TEST(SetCatalog, InvariantLedger) {
  for (int D = 1; D <= 3; ++D) EXPECT_EQ(d_invariant(CuspidalSet::horn(D)), 2 * D);
  for (int m = 1; m <= 3; ++m) {
    EXPECT_EQ(d_invariant(CuspidalSet::holder_cusp(m)), 2 * m);
    EXPECT_EQ(d_prime_invariant(CuspidalSet::holder_cusp(m)), 2 * m);
  }
  EXPECT_EQ(d_invariant(CuspidalSet::standard_simplex(2)), 2);
  EXPECT_EQ(d_prime_invariant(CuspidalSet::standard_simplex(3)), 2);
  for (const auto& s : catalog()) {
    if (s.declared_chars().empty()) {
      EXPECT_THROW(d_invariant(s), NotUPCError);
      continue;
    }
    EXPECT_LE(d_invariant(s), d_prime_invariant(s)) << s.name();
  }
}

TEST(SetCatalog, IrrationalCuspUsesPowerTerms) {
  const CuspidalSet X = CuspidalSet::irrational_cusp();
  // x^sqrt2 at 1/4 is 0.14067.., x^sqrt2 + x^2 is 0.20317..
  EXPECT_TRUE(contains(X, pt(Rational(1, 4), Rational(1, 5))));
  EXPECT_FALSE(contains(X, pt(Rational(1, 4), Rational(1, 10))));
  EXPECT_FALSE(contains(X, pt(Rational(1, 4), Rational(21, 100))));
  EXPECT_TRUE(contains(X, pt(Rational(0), Rational(0))));
  EXPECT_FALSE(contains(X, pt(Rational(-1, 4), Rational(0))));
}

TEST(SetCatalog, CuspCurveAndDihedral) {
  EXPECT_TRUE(contains(CuspidalSet::cusp_curve(), pt(Rational(4), Rational(-8))));
  EXPECT_FALSE(contains(CuspidalSet::cusp_curve(), pt(Rational(1), Rational(2))));
  const CuspidalSet R = CuspidalSet::dihedral_region(3);
  EXPECT_TRUE(contains(R, pt(Rational(1, 4), Rational(1, 8))));  // |y| = x^(3/2)
  EXPECT_FALSE(contains(R, pt(Rational(1, 4), Rational(1, 7))));
}

TEST(SetCatalog, SqrtTwoCuspAndSimplex) {
  const CuspidalSet C = CuspidalSet::truncated_cusp(CuspExponent(Sqrt2{}), Rational(1), Rational(1), 2, {});
  // |x'|^sqrt2 <= x_n: 0.5^1.414 = 0.375..
  EXPECT_TRUE(contains(C, pt(Rational(1, 2), Rational(2, 5))));
  EXPECT_FALSE(contains(C, pt(Rational(1, 2), Rational(7, 20))));
  const CuspidalSet S = CuspidalSet::standard_simplex(2);
  EXPECT_TRUE(contains(S, pt(Rational(1, 3), Rational(1, 3))));
  EXPECT_FALSE(contains(S, pt(Rational(2, 3), Rational(2, 3))));
  EXPECT_EQ(constraint_slack(S, pt(Rational(1, 4), Rational(1, 4))), Rational(1, 4));
}

TEST(SetCatalog, UnionTakesAnyMember) {
  const CuspidalSet U = CuspidalSet::set_union(
      {CuspidalSet::irrational_cusp(), CuspidalSet::half_space({Rational(1), Rational(0)}, Rational(0))});
  EXPECT_TRUE(contains(U, pt(Rational(-1), Rational(5))));
  EXPECT_TRUE(contains(U, pt(Rational(1, 4), Rational(1, 5))));
  EXPECT_FALSE(contains(U, pt(Rational(1, 4), Rational(1))));
  EXPECT_THROW(U.constraints(), UnsupportedError);
}

TEST(SetCatalog, SlackIsNonnegativeInside) {
  Rng rng(5);
  for (const auto& s : catalog()) {
    if (s.dimension() != 2 || std::holds_alternative<CuspCurve>(s.kind())) continue;
    for (int i = 0; i < 60; ++i) {
      const RationalVector x = pt(rng.rational_in(Rational(-1), Rational(1)), rng.rational_in(Rational(-1), Rational(2)));
      const Membership m = classify(s, x);
      if (m == Membership::Inside) {
        EXPECT_GE(constraint_slack(s, x), 0) << s.name();
      }
    }
  }
}

TEST(SetCatalog, RejectsBadInput) {
  EXPECT_THROW(CuspidalSet::horn(0), DomainError);
  EXPECT_THROW(CuspidalSet::truncated_cusp(CuspExponent(Rational(-1)), Rational(1), Rational(1), 2, {}), DomainError);
  EXPECT_THROW(CuspidalSet::simplex({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}, {Rational(2), Rational(2)}}, {}),
               DomainError);
  EXPECT_THROW(contains(CuspidalSet::horn(1), RationalVector{Rational(1)}), DimensionError);
}
