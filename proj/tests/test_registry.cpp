#include <gtest/gtest.h>

#include "analytica/registry.hpp"

using namespace analytica;

TEST(JsonIo, SetsRoundTrip) {
  for (const auto& s : catalog()) {
    const io::Json j = io::to_json(s);
    const CuspidalSet back = io::set_from(j);
    EXPECT_EQ(io::to_json(back), j) << s.name();
  }
}

TEST(JsonIo, PolynomialsMapsExpressions) {
  const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const PolynomialMap p(2, {x * y * Rational(3, 7) - y, x.pow(4)});
  EXPECT_EQ(io::polymap_from(io::to_json(p)), p);
  EXPECT_EQ(io::polynomial_from(io::Json::parse(R"([0, "1/2", 0, 3])"), 1),
            Polynomial::univariate({Rational(0), Rational(1, 2), Rational(0), Rational(3)}));
  const Expression f = functions::flat_bump();
  EXPECT_EQ(io::to_json(io::expression_from(io::to_json(f))), io::to_json(f));
  EXPECT_THROW(io::expression_from(io::Json::parse(R"(["sin", 1])")), ParseError);
  EXPECT_THROW(io::set_from(io::Json::parse(R"({"kind": "torus"})")), ParseError);
  EXPECT_THROW(io::rational_from(io::Json(1.5)), ParseError);
}

TEST(JsonIo, WitnessRoundTrip) {
  for (const auto& sw : shipped_witnesses()) {
    const io::Json j = io::to_json(sw.witness);
    EXPECT_EQ(io::to_json(io::witness_from(j)), j);
  }
}

TEST(Figures, ByteStableAndShaped) {
  const Figure a = set_outline(CuspidalSet::horn(2)), b = set_outline(CuspidalSet::horn(2));
  EXPECT_EQ(a.svg, b.svg);
  EXPECT_EQ(a.csv, b.csv);
  EXPECT_NE(a.svg.find("<polyline"), std::string::npos);
  EXPECT_EQ(a.csv.substr(0, 11), "curve,x,y\ny");
  EXPECT_THROW(set_outline(CuspidalSet::orthant(3)), UnsupportedError);

  // 1/(1 - t): every coefficient is 1, a flat line at log10 = 0
  const TruncatedSeries g =
      TruncatedSeries(Polynomial::univariate({Rational(1), Rational(-1)}), 20).inverse();
  const Figure d = coefficient_decay(g);
  EXPECT_NE(d.csv.find("log10|a_k|,20.000000,0.000000"), std::string::npos);

  const Figure c = circle_image(verify_circle_to_segment(3, Rational(1), 36));
  EXPECT_EQ(c.csv.substr(0, 11), "theta,x,y\n0");
  EXPECT_EQ(std::count(c.csv.begin(), c.csv.end(), '\n'), 37);
}

TEST(Registry, NamesAreFixed) {
  EXPECT_EQ(registry_names(), (std::vector<std::string>{"example-3.1", "example-3.2", "example-3.3", "example-3.4",
                                                         "sigma-geometry", "q-factorization", "upc-construction",
                                                         "rank-audit"}));
}

TEST(Registry, ParametersAndGoldenSummaries) {
  const ExperimentReport h = run_experiment({"example-3.1", {{"D", "2"}, {"plots", "50"}}, 1});
  EXPECT_TRUE(h.passed);
  EXPECT_EQ(h.json["results"]["min_degree"], 4);
  EXPECT_EQ(h.json["results"]["witness_verdict"], "FlatNonzero");
  EXPECT_EQ(h.json["schema"], 1);

  const ExperimentReport o = run_experiment({"example-3.2", {{"n", "3"}}, 1});
  EXPECT_TRUE(o.passed);
  EXPECT_EQ(o.json["results"]["degree1_plots_through_0"], "only zero map");

  const ExperimentReport s = run_experiment({"sigma-geometry", {{"d", "3"}, {"r", "1"}}, 1});
  EXPECT_TRUE(s.passed);
  EXPECT_EQ(s.json["results"]["bound_r^d"], "1.000000000000");
  EXPECT_EQ(s.json["results"]["rank"]["generic_rank"], 2);
}

TEST(Registry, InputErrors) {
  EXPECT_THROW(run_experiment({"example-9", {}, 1}), ParseError);
  EXPECT_THROW(run_experiment({"example-3.1", {{"Q", "1"}}, 1}), ParseError);
  EXPECT_THROW(run_experiment({"example-3.1", {{"D", "two"}}, 1}), ParseError);
  EXPECT_THROW(run_experiment({"sigma-geometry", {{"r", "x"}}, 1}), ParseError);
}

TEST(Registry, SameSeedSameBytes) {
  for (const auto& name : {"example-3.4", "q-factorization", "rank-audit"}) {
    const ExperimentReport a = run_experiment({name, {}, 77}), b = run_experiment({name, {}, 77});
    EXPECT_EQ(io::dump(a.json), io::dump(b.json)) << name;
  }
}
