// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "analytica/analytica.hpp"

using namespace analytica;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

ExperimentReport run(const std::string& name, std::map<std::string, std::string> params, std::uint64_t seed = 1) {
  return run_experiment({name, std::move(params), seed});
}

Outcome horn_threshold() {
  const auto t0 = Clock::now();
  Outcome o;
  for (int D = 1; D <= 3; ++D) {
    const ExperimentReport r = run("example-3.1", {{"D", std::to_string(D)}, {"plots", "500"}});
    const auto& res = r.json["results"];
    const bool ok = r.passed && res["min_degree"] == 2 * D && res["low_degree_plots"]["refuted"] == 500 &&
                    res["witness_containment"] == "Certified" && res["witness_verdict"] == "FlatNonzero" &&
                    !res["threshold"]["trace"].empty();
    o.ok = o.ok && ok;
    o.detail += "D=" + std::to_string(D) + (ok ? " ok " : " FAILED ");
  }
  const double s = seconds_since(t0);
  o.ok = o.ok && s < 10;
  o.detail += "(" + io::fixed(s, 2) + " s, limit 10)";
  return o;
}

Outcome orthant_rigidity() {
  const auto t0 = Clock::now();
  Outcome o;
  for (int n = 2; n <= 4; ++n) {
    const ExperimentReport r = run("example-3.2", {{"n", std::to_string(n)}});
    const bool ok = r.passed && r.json["results"]["degree1_plots_through_0"] == "only zero map";
    o.ok = o.ok && ok;
    o.detail += "n=" + std::to_string(n) + (ok ? " ok " : " FAILED ");
  }
  const double s = seconds_since(t0);
  o.ok = o.ok && s < 1;
  o.detail += "(" + io::fixed(s, 3) + " s, limit 1)";
  return o;
}

Outcome irrational_cusp() {
  const auto t0 = Clock::now();
  const ExperimentReport r = run("example-3.3", {{"max-degree", "6"}});
  const double s = seconds_since(t0);
  const auto& g = r.json["results"]["grid"];
  Outcome o;
  o.ok = r.passed && g["refuted"] == g["plots"] && g["plots"] == 531440 && s < 60;
  o.detail = "valuation argument + " + g["refuted"].dump() + "/" + g["plots"].dump() + " grid plots of degree <= 6 refuted, " +
             g["concrete_witnesses"].dump() + " with explicit outside points (" + io::fixed(s, 1) + " s, limit 60)";
  return o;
}

Outcome cusp_curve_composite() {
  const ExperimentReport r = run("example-3.4", {{"count", "20"}, {"degree", "5"}});
  Outcome o;
  o.ok = r.passed && r.json["results"]["certified"] == 20 && r.json["results"]["series_equal_g"] == 20;
  o.detail = r.json["results"]["certified"].dump() + "/20 certified, " + r.json["results"]["series_equal_g"].dump() +
             "/20 series exactly g";
  return o;
}

Outcome sigma_geometry() {
  Outcome o;
  int runs = 0;
  for (int d = 3; d <= 5; ++d)
    for (const char* r : {"1/10", "1/2", "1"}) {
      const ExperimentReport rep = run("sigma-geometry", {{"d", std::to_string(d)}, {"r", r}, {"samples", "360"}});
      o.ok = o.ok && rep.passed;
      ++runs;
      if (!rep.passed) o.detail += "d=" + std::to_string(d) + " r=" + r + " FAILED; ";
    }
  o.detail += std::to_string(runs) + " (d, r) cases, 360 angles each, rank 2, invariance within 1e-12";
  return o;
}

Outcome q_factorization() {
  const ExperimentReport r = run("q-factorization", {{"count", "50"}, {"K", "12"}});
  Outcome o;
  o.ok = r.passed;
  for (int n = 2; n <= 4; ++n) {
    const auto& e = r.json["results"]["n=" + std::to_string(n)];
    o.ok = o.ok && e["even_support"] == 50 && e["residual_zero"] == 50 && e["rank"]["generic_rank"] == n;
    o.detail += "n=" + std::to_string(n) + ": " + e["residual_zero"].dump() + "/50 exact, rank " +
                e["rank"]["generic_rank"].dump() + "; ";
  }
  return o;
}

Outcome upc_construction() {
  const ExperimentReport r = run("upc-construction", {{"samples", "1000"}});
  Outcome o;
  o.ok = r.passed;
  for (const char* name : {"holder-cusp-m1", "holder-cusp-m2", "holder-cusp-m3", "horn-D1", "horn-D2"}) {
    const auto& e = r.json["results"][name];
    const bool ok = e["degree"] <= e["degree_bound"] && e["vertex_certificate"] == true &&
                    e["strongly_injective"] == true && e["distance_chain"]["membership_violations"] == 0 &&
                    e["distance_chain"]["samples"] == 1000 && e["psi(0) == x"] == true;
    o.ok = o.ok && ok;
    o.detail += std::string(name) + " deg " + e["degree"].dump() + (ok ? " ok; " : " FAILED; ");
  }
  return o;
}

Outcome invariant_ledger() {
  Outcome o;
  for (int D = 1; D <= 3; ++D) o.ok = o.ok && d_invariant(CuspidalSet::horn(D)) == 2 * D;
  for (int m = 1; m <= 3; ++m) {
    const CuspidalSet c = CuspidalSet::holder_cusp(m);
    o.ok = o.ok && d_invariant(c) == 2 * m && d_prime_invariant(c) == 2 * m;
  }
  for (std::size_t n = 2; n <= 3; ++n) o.ok = o.ok && d_invariant(CuspidalSet::standard_simplex(n)) == 2;
  int entries = 0;
  for (const auto& s : catalog()) {
    if (s.declared_chars().empty()) continue;
    ++entries;
    o.ok = o.ok && d_invariant(s) <= d_prime_invariant(s);
  }
  o.detail = "stated values match; d <= d' on " + std::to_string(entries) + " catalog entries with characteristics";
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const auto& name : registry_names()) {
    const std::string a = io::dump(run(name, {}, 2024).json), b = io::dump(run(name, {}, 2024).json);
    if (a != b) {
      o.ok = false;
      o.detail += name + " differs; ";
    }
  }
  if (o.ok) o.detail = std::to_string(registry_names().size()) + " experiments byte-identical on rerun";
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"horn threshold", horn_threshold},     {"orthant rigidity", orthant_rigidity},
      {"irrational cusp", irrational_cusp},   {"cusp curve composite", cusp_curve_composite},
      {"sigma geometry", sigma_geometry},     {"q factorization", q_factorization},
      {"upc construction", upc_construction}, {"invariant ledger", invariant_ledger},
      {"determinism", determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.ok;
    std::printf("%s criterion %zu (%s): %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
