#include <gtest/gtest.h>

#include "analytica/upc.hpp"

using namespace analytica;

namespace {

bool encloses(const Interval& i, const Rational& q) { return i.lo().to_rational() <= q && q <= i.hi().to_rational(); }

UPCWitness holder_witness(int m) {
  return {{Rational(0), Rational(0)},
          PolynomialMap(1, {Polynomial(1), Polynomial::monomial({1}, Rational(1, 2))}),
          m,
          CuspidalSet::holder_cusp(m).declared_chars().front().M,
          {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
}

} // namespace

TEST(Witness, ValidationRejectsDegenerateInput) {
  UPCWitness w = holder_witness(1);
  EXPECT_NO_THROW(validate(w));
  UPCWitness bad = w;
  bad.x = {Rational(1), Rational(0)};
  EXPECT_THROW(validate(bad), DegenerateWitnessError);
  bad = w;
  bad.basis = {{Rational(0), Rational(1)}, {Rational(0), Rational(2)}};
  EXPECT_THROW(validate(bad), DegenerateWitnessError);
  bad = w;
  bad.basis[1] = {Rational(2), Rational(0)};
  EXPECT_THROW(validate(bad), DegenerateWitnessError);
  bad = w;
  bad.basis[0] = {Rational(0), Rational(-1)};
  EXPECT_THROW(validate(bad), DegenerateWitnessError);
  bad = w;
  bad.h = PolynomialMap(1, {Polynomial(1), Polynomial(1)});
  EXPECT_THROW(validate(bad), DegenerateWitnessError);
}

TEST(Cone, RhoIsExactWhereItCanBe) {
  const ConeC c = ConeC::from(holder_witness(2));  // rho^2 = M/2 = 1/24
  EXPECT_EQ(c.rho_pow_m, Rational(1, 24));
  const Rational lo = c.rho_lower();
  EXPECT_LE(pow(lo, 2U), Rational(1, 24));
  EXPECT_GT(lo.get_d(), std::sqrt(1.0 / 24) * 0.99);
  EXPECT_TRUE(c.contains(RationalVector{Rational(1), lo}));
  EXPECT_FALSE(c.contains(RationalVector{Rational(1), Rational(1, 4)}));
}

TEST(SimplexToCone, VertexCertificate) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const ConeC c{n, 1, Rational(1, 4)};
    const SimplexToCone l = build_simplex_to_cone(c);
    EXPECT_TRUE(l.vertex_certificate);
    EXPECT_EQ(l.vertex_trace.size(), n + 1);
    EXPECT_NE(l.det_without_rho, 0);
  }
}

TEST(Psi, ShippedWitnessesFrozenDegrees) {
  const std::map<std::string, int> degrees{{"holder-cusp-m1", 2}, {"holder-cusp-m2", 4}, {"holder-cusp-m3", 6},
                                           {"horn-D1", 2},        {"horn-D2", 4},        {"simplex-2", 2}};
  for (const auto& sw : shipped_witnesses()) {
    const PsiResult p = build_psi(sw.witness);
    EXPECT_EQ(p.degree, degrees.at(sw.name)) << sw.name;
    EXPECT_TRUE(p.ell.vertex_certificate);
    EXPECT_TRUE(p.injectivity.strongly_injective);
    const RationalVector zero(2, Rational(0));
    EXPECT_EQ(p.psi.evaluate(std::span<const Rational>(zero)), sw.witness.x);
  }
}

TEST(Psi, EqualsThetaAfterLAfterQ) {
  // psi(s) against theta(l(q(s))) with rho carried as an interval
  for (const auto& sw : shipped_witnesses()) {
    const PsiResult p = build_psi(sw.witness);
    const ConeC cone = ConeC::from(sw.witness);
    const Interval rho = cone.rho();
    Rng rng(12);
    for (int i = 0; i < 20; ++i) {
      const RationalVector s{rng.rational(20), rng.rational(20)};
      const RationalVector q{s[0] * s[0], s[1] * s[1]};
      const RationalVector lin = p.ell.image(q);
      const Interval arg[2] = {Interval(lin[0]), rho * Interval(lin[1])};
      const auto expect = p.theta.evaluate(std::span<const Interval>(arg, 2));
      const RationalVector got = p.psi.evaluate(std::span<const Rational>(s));
      for (int j = 0; j < 2; ++j) EXPECT_TRUE(encloses(expect[static_cast<std::size_t>(j)], got[static_cast<std::size_t>(j)])) << sw.name;
    }
  }
}

TEST(DistanceChain, ShippedWitnessesAreClean) {
  for (const auto& sw : shipped_witnesses()) {
    const DistanceChainReport r = verify_distance_chain(sw.witness, sw.set, 300, 5);
    EXPECT_TRUE(r.clean()) << sw.name;
    EXPECT_EQ(r.boundary_samples, 8U);
    EXPECT_GE(r.min_ratio, 1.0);
    const Theta2D t = build_theta_2d(sw.witness, sw.set, 100, 5);
    EXPECT_EQ(t.outside, 0U) << sw.name;
  }
}

TEST(DistanceChain, OversizedMFails) {
  // declaring a huge M pushes theta out of the cusp
  UPCWitness w = holder_witness(1);
  w.M = Rational(8);
  const DistanceChainReport r = verify_distance_chain(w, CuspidalSet::holder_cusp(1), 200, 1);
  EXPECT_GT(r.membership_violations + r.margin_violations, 0U);
}
