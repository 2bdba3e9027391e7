// analytica: run named reproductions, check JSON descriptors, draw figures.
//
// exit codes: 0 all expectations met, 1 an expectation failed, 2 bad input

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "analytica/analytica.hpp"

namespace fs = std::filesystem;
using namespace analytica;
using io::Json;

namespace {

constexpr int kPass = 0, kFail = 1, kInput = 2;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
}

/// Leftover "--key value" / "--key=value" pairs become experiment parameters.
std::map<std::string, std::string> collect_params(const std::vector<std::string>& extra) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < extra.size(); ++i) {
    const std::string& a = extra[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) throw ParseError("unexpected argument '" + a + "'");
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      out[a.substr(2, eq - 2)] = a.substr(eq + 1);
    } else {
      if (i + 1 >= extra.size()) throw ParseError("parameter " + a + " needs a value");
      out[a.substr(2)] = extra[++i];
    }
  }
  return out;
}

void emit(const ExperimentReport& r, const std::string& name, const std::string& out_dir, bool figures) {
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_file(dir / (name + ".json"), io::dump(r.json));
  if (!figures) return;
  for (const auto& [stem, f] : r.figures) {
    write_file(dir / (name + "." + stem + ".svg"), f.svg);
    write_file(dir / (name + "." + stem + ".csv"), f.csv);
  }
}

int run_command(const std::string& name, const std::vector<std::string>& extra, std::uint64_t seed,
                const std::string& out_dir, unsigned jobs, bool figures) {
  const auto params = collect_params(extra);
  if (name != "all") {
    const ExperimentReport r = run_experiment({name, params, seed});
    if (out_dir.empty()) std::cout << io::dump(r.json);
    else emit(r, name, out_dir, figures);
    std::cerr << name << ": " << (r.passed ? "pass" : "FAIL") << "\n";
    return r.passed ? kPass : kFail;
  }
  if (!params.empty()) throw ParseError("'run all' takes no experiment parameters");
  const auto names = registry_names();
  std::vector<ExperimentReport> reports(names.size());
  std::vector<std::string> errors(names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < names.size();) {
      try {
        reports[i] = run_experiment({names[i], {}, seed});
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1U, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // merged by name order, independent of scheduling
  Json merged = Json::object();
  bool all = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!errors[i].empty()) throw Error(names[i] + ": " + errors[i]);
    all = all && reports[i].passed;
    std::cerr << names[i] << ": " << (reports[i].passed ? "pass" : "FAIL") << "\n";
    if (out_dir.empty()) merged[names[i]] = reports[i].json;
    else emit(reports[i], names[i], out_dir, figures);
  }
  if (out_dir.empty()) std::cout << io::dump({{"schema", 1}, {"experiments", merged}, {"passed", all}});
  return all ? kPass : kFail;
}

// --- check ---------------------------------------------------------------------

std::string str(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

int check_command(const std::string& path) {
  const Json d = read_json(path);
  const std::string what = io::field(d, "check").get<std::string>();
  Json result;
  Json verdict; // compared against "expect"
  if (what == "membership") {
    const CuspidalSet set = io::set_from(io::field(d, "set"));
    const RationalVector x = io::vector_from(io::field(d, "point"));
    const Membership m = classify(set, x);
    verdict = to_string(m);
    result = {{"membership", verdict}};
    if (m == Membership::Inside) result["slack"] = io::to_json(constraint_slack(set, x));
  } else if (what == "germ") {
    const CuspidalSet set = io::set_from(io::field(d, "set"));
    const PolynomialMap p = io::polymap_from(io::field(d, "plot"));
    ContainmentVerdict v;
    if (d.contains("sampled")) {
      const Json& s = d["sampled"];
      v = germ_in_set_sampled(p, set, io::rational_from(io::field(s, "radius")),
                              static_cast<std::size_t>(io::int_field(s, "count", 200)),
                              static_cast<std::uint64_t>(io::int_field(s, "seed", 1)));
    } else {
      v = germ_in_set(p, set);
    }
    result = io::to_json(v);
    verdict = to_string(v.tag);
  } else if (what == "analyticity") {
    const Expression f = io::expression_from(io::field(d, "function"));
    const PolynomialMap p = io::polymap_from(io::field(d, "plot"));
    const AnalyticityVerdict v = classify_analyticity(f, p, static_cast<int>(io::int_field(d, "K", kDefaultSeriesOrder)));
    result = io::to_json(v);
    verdict = to_string(v.tag);
  } else if (what == "rank") {
    const PolynomialMap p = io::polymap_from(io::field(d, "map"));
    const RankReport r = generic_rank(p, static_cast<int>(io::int_field(d, "trials", kDefaultRankTrials)),
                                      static_cast<std::uint64_t>(io::int_field(d, "seed", 1)));
    result = io::to_json(r);
    verdict = r.generic_rank;
  } else if (what == "plot-degree") {
    const CuspidalSet set = io::set_from(io::field(d, "set"));
    std::optional<int> bound;
    if (d.contains("degree_bound")) bound = static_cast<int>(io::int_field(d, "degree_bound", 0));
    const PlotDegreeResult r = min_plot_degree_through_origin(set, bound);
    result = io::to_json(r);
    verdict = r.degree ? Json(*r.degree) : Json("NoNonconstantPlot");
  } else if (what == "witness") {
    const CuspidalSet set = io::set_from(io::field(d, "set"));
    const UPCWitness w = io::witness_from(io::field(d, "witness"));
    const auto seed = static_cast<std::uint64_t>(io::int_field(d, "seed", 1));
    const PsiResult psi = build_psi(w, kDefaultRankTrials, seed);
    const DistanceChainReport c =
        verify_distance_chain(w, set, static_cast<std::size_t>(io::int_field(d, "samples", 1000)), seed);
    const bool ok = psi.ell.vertex_certificate && psi.injectivity.strongly_injective && c.clean();
    result = {{"psi", io::to_json(psi.psi)},
              {"degree", psi.degree},
              {"vertex_certificate", psi.ell.vertex_certificate},
              {"strongly_injective", psi.injectivity.strongly_injective},
              {"distance_chain", {{"samples", c.samples},
                                  {"membership_violations", c.membership_violations},
                                  {"margin_violations", c.margin_violations},
                                  {"indeterminate", c.indeterminate}}}};
    verdict = ok ? "clean" : "violations";
  } else if (what == "invariants") {
    const CuspidalSet set = io::set_from(io::field(d, "set"));
    result = {{"d", d_invariant(set)}, {"d_prime", d_prime_invariant(set)}};
    verdict = result;
  } else {
    throw ParseError("unknown check '" + what + "'");
  }
  Json out{{"schema", 1}, {"check", what}, {"result", result}, {"verdict", verdict}};
  int code = kPass;
  if (d.contains("expect")) {
    const bool ok = str(d["expect"]) == str(verdict);
    out["expect"] = d["expect"];
    out["passed"] = ok;
    code = ok ? kPass : kFail;
  }
  std::cout << io::dump(out);
  return code;
}

// --- figure --------------------------------------------------------------------

int figure_command(const std::string& kind, const std::string& descriptor, const std::string& out_dir) {
  const Json d = descriptor.empty() ? Json::object() : read_json(descriptor);
  Figure f;
  if (kind == "set-outline") {
    const CuspidalSet set = d.contains("set") ? io::set_from(d["set"]) : CuspidalSet::horn(2);
    f = set_outline(set, static_cast<int>(io::int_field(d, "points", 100)));
  } else if (kind == "coefficient-decay") {
    const Expression g = d.contains("function") ? io::expression_from(d["function"]) : functions::geometric();
    const PolynomialMap p = d.contains("plot") ? io::polymap_from(d["plot"]) : PolynomialMap::identity(1);
    const CompositeGerm s = taylor_of_composite(g, p, static_cast<int>(io::int_field(d, "K", kDefaultSeriesOrder)));
    if (!std::holds_alternative<TruncatedSeries>(s)) throw UnsupportedError("the composite is flat; no coefficients to draw");
    f = coefficient_decay(std::get<TruncatedSeries>(s));
  } else if (kind == "circle-image") {
    const Rational r = d.contains("r") ? io::rational_from(d["r"]) : Rational(1);
    f = circle_image(verify_circle_to_segment(static_cast<int>(io::int_field(d, "d", 3)), r,
                                              static_cast<int>(io::int_field(d, "samples", 360))));
  } else {
    throw UnsupportedError("unknown figure kind '" + kind + "'");
  }
  if (out_dir.empty()) {
    std::cout << f.svg;
    return kPass;
  }
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / (kind + ".svg"), f.svg);
  write_file(fs::path(out_dir) / (kind + ".csv"), f.csv);
  return kPass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"analytica: plots, germs and invariant maps on cuspidal sets"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a registry experiment (or 'all'); extra --key value pairs are parameters");
  std::string name, out_dir;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool figures = false;
  run->add_option("name", name, "experiment name or 'all'")->required();
  run->add_option("--seed", seed, "seed for every randomized step")->required();
  run->add_option("--out", out_dir, "directory for <name>.json (stdout when omitted)");
  run->add_option("--jobs", jobs, "worker threads for 'run all'")->check(CLI::Range(1U, 64U));
  run->add_flag("--figures", figures, "also write SVG/CSV figures next to the reports");
  run->allow_extras();

  auto* check = app.add_subcommand("check", "evaluate a JSON descriptor");
  std::string descriptor;
  check->add_option("descriptor", descriptor, "descriptor file")->required();

  auto* figure = app.add_subcommand("figure", "draw set-outline, coefficient-decay or circle-image");
  std::string kind, fig_descriptor, fig_out;
  figure->add_option("kind", kind)->required()->check(CLI::IsMember({"set-outline", "coefficient-decay", "circle-image"}));
  figure->add_option("descriptor", fig_descriptor, "optional descriptor file");
  figure->add_option("--out", fig_out, "directory for <kind>.svg and <kind>.csv (SVG to stdout when omitted)");

  app.add_subcommand("list", "list registry experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*run) return run_command(name, run->remaining(), seed, out_dir, jobs, figures);
    if (*check) return check_command(descriptor);
    if (*figure) return figure_command(kind, fig_descriptor, fig_out);
    for (const auto& n : registry_names()) std::cout << n << "\n";
    return kPass;
  } catch (const std::exception& e) {
    // malformed descriptors, bad parameters and undecidable inputs alike
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
