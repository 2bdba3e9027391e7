#include <gtest/gtest.h>

#include "analytica/interval.hpp"
#include "analytica/polynomial.hpp"
#include "analytica/quadratic_surd.hpp"
#include "analytica/rational.hpp"

using namespace analytica;

namespace {

bool encloses(const Interval& i, const Rational& q) { return i.lo().to_rational() <= q && q <= i.hi().to_rational(); }

} // namespace

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
}

TEST(Rational, ExactRoots) {
  EXPECT_EQ(*exact_root(Rational(8, 27), 3), Rational(2, 3));
  EXPECT_EQ(*exact_root(Rational(-8), 3), Rational(-2));
  EXPECT_FALSE(exact_root(Rational(-4), 2));
  EXPECT_FALSE(exact_root(Rational(2), 2));
  EXPECT_EQ(*exact_rational_power(Rational(4, 9), Rational(-3, 2)), Rational(27, 8));
  EXPECT_FALSE(exact_rational_power(Rational(0), Rational(-1, 2)));
}

TEST(Rng, IsDeterministicPerSeed) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    const Rational x = a.rational(100);
    EXPECT_EQ(x, b.rational(100));
    (void)c;
  }
  Rng d(5);
  for (int i = 0; i < 100; ++i) {
    const Rational r = d.rational_in(Rational(-1, 3), Rational(2));
    EXPECT_GE(r, Rational(-1, 3));
    EXPECT_LE(r, Rational(2));
  }
}

TEST(Interval, ArithmeticEnclosesExactResults) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Rational a = rng.rational(1000), b = rng.rational(1000);
    const Interval A(a), B(b);
    EXPECT_TRUE(encloses(A + B, a + b));
    EXPECT_TRUE(encloses(A - B, a - b));
    EXPECT_TRUE(encloses(A * B, a * b));
    if (b != 0) {
      EXPECT_TRUE(encloses(A / B, a / b));
    }
    EXPECT_TRUE(encloses(pow(A, 5L), pow(a, 5U)));
  }
}

TEST(Interval, TranscendentalsAreTight) {
  const Interval s2 = Interval::sqrt2();
  EXPECT_LT(s2.width(), 1e-70);
  EXPECT_TRUE(encloses(s2 * s2, Rational(2)));
  const Interval pi = Interval::pi();
  EXPECT_NEAR(pi.mid(), M_PI, 1e-15);
  const Interval c = cos(pi);
  EXPECT_TRUE(encloses(c, Rational(-1)));
  EXPECT_TRUE(encloses(root(Interval(Rational(-27)), 3), Rational(-3)));
  EXPECT_TRUE(encloses(pow(Interval(Rational(4)), Rational(3, 2)), Rational(8)));
  EXPECT_TRUE(encloses(log(exp(Interval(Rational(1, 3)))), Rational(1, 3)));
}

TEST(Interval, DomainGuards) {
  EXPECT_THROW(sqrt(Interval(Rational(-1))), DomainError);
  EXPECT_THROW(log(Interval(Rational(0))), DomainError);
  EXPECT_THROW(pow(Interval(Rational(-1)), Interval(Rational(1, 2))), DomainError);
}

TEST(QuadraticSurd, SignMatchesFloatingPointAwayFromZero) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const long a = rng.uniform_int(-50, 50), b = rng.uniform_int(-50, 50);
    const SurdOrder x(a, b);
    const double v = static_cast<double>(a) + static_cast<double>(b) * std::sqrt(2.0);
    EXPECT_EQ(x.sign(), v > 0 ? 1 : v < 0 ? -1 : 0) << a << " " << b;
  }
}

TEST(QuadraticSurd, OrderingAndInverse) {
  EXPECT_LT(SurdOrder(0, 1), SurdOrder(2, 0)); // sqrt2 < 2
  EXPECT_GT(SurdOrder(0, 3), SurdOrder(4, 0)); // 3 sqrt2 > 4
  EXPECT_LT(SurdOrder(7, -5), SurdOrder(0, 0)); // 7 < 5 sqrt2
  const SurdRational x(Rational(3), Rational(-2));
  EXPECT_EQ(x * inverse(x), SurdRational(Rational(1)));
  EXPECT_EQ(to_string(SurdOrder(0, 1)), "sqrt2");
}

TEST(Polynomial, CompositionCommutesWithEvaluation) {
  Rng rng(7);
  const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const Polynomial p = x * x * y - x * Rational(3) + y.pow(3) * Rational(1, 2) + Polynomial::constant(2, Rational(5));
  const Polynomial t = Polynomial::variable(1, 0);
  const std::vector<Polynomial> subs{t * t + t, t.pow(3) - Polynomial::constant(1, Rational(2))};
  const Polynomial c = p.compose(subs);
  for (int i = 0; i < 50; ++i) {
    const Rational s = rng.rational(50);
    const RationalVector pt{subs[0].evaluate(s), subs[1].evaluate(s)};
    EXPECT_EQ(c.evaluate(s), p.evaluate(pt));
  }
}

TEST(Polynomial, TruncatedProductsAgreeWithFullProducts) {
  const Polynomial a = Polynomial::univariate({Rational(1), Rational(2), Rational(3), Rational(4)});
  const Polynomial b = Polynomial::univariate({Rational(-1), Rational(0), Rational(5)});
  EXPECT_EQ(Polynomial::multiply(a, b, 3), (a * b).truncated(3));
  EXPECT_EQ(a.pow(4, 5), a.pow(4).truncated(5));
}

TEST(Polynomial, DerivativeValuationDivision) {
  const Polynomial p = Polynomial::univariate({Rational(0), Rational(0), Rational(-3), Rational(1)});
  EXPECT_EQ(p.derivative(0), Polynomial::univariate({Rational(0), Rational(-6), Rational(3)}));
  const Valuation v = valuation(p);
  EXPECT_EQ(v.order, 2);
  EXPECT_EQ(v.leading, Rational(-3));
  const Polynomial g = Polynomial::univariate({Rational(2), Rational(1)});
  EXPECT_EQ(*divide_exact(g.pow(3), g.pow(2)), g);
  EXPECT_FALSE(divide_exact(g.pow(2) + Polynomial::constant(1, Rational(1)), g));
  EXPECT_THROW(valuation(Polynomial(1)), ZeroPolynomialError);
}

TEST(Polynomial, IntervalEvaluationEnclosesExactValue) {
  const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const Polynomial p = x.pow(5) - x * y * Rational(7, 3) + y.pow(2);
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const Rational a = rng.rational(30), b = rng.rational(30);
    const Interval pt[2] = {Interval(a), Interval(b)};
    const RationalVector q{a, b};
    EXPECT_TRUE(encloses(p.evaluate(std::span<const Interval>(pt, 2)), p.evaluate(q)));
  }
}

TEST(PolynomialMap, ComposeAndAffine) {
  const PolynomialMap lin = PolynomialMap::affine({{Rational(1), Rational(2)}, {Rational(0), Rational(-1)}},
                                                  {Rational(1), Rational(0)});
  const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const PolynomialMap sq(2, {x * x, x * y});
  const PolynomialMap c = compose_polymaps(sq, lin);
  const RationalVector pt{Rational(2), Rational(3)};
  const RationalVector inner = lin.evaluate(pt);
  EXPECT_EQ(inner, (RationalVector{Rational(9), Rational(-3)}));
  EXPECT_EQ(c.evaluate(pt), sq.evaluate(inner));
  EXPECT_EQ(c.degree(), 2);
  EXPECT_THROW(compose_polymaps(sq, PolynomialMap::identity(3)), DimensionError);
}
