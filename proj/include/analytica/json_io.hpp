#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "analytica/error.hpp"
#include "analytica/expression.hpp"
#include "analytica/poly_germs.hpp"
#include "analytica/polynomial.hpp"
#include "analytica/rank.hpp"
#include "analytica/series_engine.hpp"
#include "analytica/set_catalog.hpp"
#include "analytica/upc.hpp"

namespace analytica::io {

using Json = nlohmann::json;

// Rationals travel as "p/q" strings; plain integers are accepted on input.

inline Json to_json(const Rational& q) { return q.get_str(); }

inline Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

inline Json to_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

inline RationalVector vector_from(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  RationalVector v;
  for (const auto& c : j) v.push_back(rational_from(c));
  return v;
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline long int_field(const Json& j, const char* key, long fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return j.at(key).get<long>();
}

// --- polynomials ------------------------------------------------------------

inline Json to_json(const Polynomial& p) {
  Json a = Json::array();
  for (const auto& [e, c] : p.terms()) a.push_back({{"exps", e}, {"coef", to_json(c)}});
  return a;
}

inline Polynomial polynomial_from(const Json& j, std::size_t nvars) {
  if (!j.is_array()) throw ParseError("polynomial must be a list of {exps, coef} terms");
  // one variable: a plain coefficient list [c0, c1, ...] is accepted too
  if (nvars == 1 && !j.empty() && !j.front().is_object()) return Polynomial::univariate(vector_from(j));
  Polynomial p(nvars);
  for (const auto& t : j) {
    const Json& e = field(t, "exps");
    if (!e.is_array() || e.size() != nvars) throw ParseError("term exponent list has wrong length");
    Exponents ex;
    for (const auto& v : e) {
      if (!v.is_number_integer() || v.get<long>() < 0) throw ParseError("exponents must be nonnegative integers");
      ex.push_back(v.get<int>());
    }
    p.add_term(ex, rational_from(field(t, "coef")));
  }
  return p;
}

inline Json to_json(const PolynomialMap& p) {
  Json c = Json::array();
  for (const auto& comp : p.components()) c.push_back(to_json(comp));
  return {{"source_dim", p.source_dim()}, {"components", c}};
}

inline PolynomialMap polymap_from(const Json& j) {
  const long m = int_field(j, "source_dim", -1);
  if (m < 0) throw ParseError("polynomial map needs source_dim");
  const Json& comps = field(j, "components");
  if (!comps.is_array()) throw ParseError("components must be an array");
  std::vector<Polynomial> c;
  for (const auto& p : comps) c.push_back(polynomial_from(p, static_cast<std::size_t>(m)));
  return {static_cast<std::size_t>(m), std::move(c)};
}

// --- sets ---------------------------------------------------------------------

inline Json to_json(const CuspidalSet& s);

inline Json chars_json(const std::vector<UPCCharacteristic>& chars) {
  Json a = Json::array();
  for (const auto& c : chars) a.push_back({c.m, c.D, to_json(c.M)});
  return a;
}

inline Json to_json(const CuspidalSet& s) {
  Json params = Json::object();
  std::string kind;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, TruncatedCusp>) {
          kind = "truncated_cusp";
          params["alpha"] = std::holds_alternative<Sqrt2>(k.alpha) ? Json("sqrt2") : to_json(std::get<Rational>(k.alpha));
          params["r"] = to_json(k.r);
          params["h"] = to_json(k.h);
          params["n"] = k.n;
        } else if constexpr (std::is_same_v<K, Horn>) {
          kind = "horn";
          params["D"] = k.D;
        } else if constexpr (std::is_same_v<K, Orthant>) {
          kind = "orthant";
          params["n"] = k.n;
        } else if constexpr (std::is_same_v<K, Simplex>) {
          kind = "simplex";
          Json v = Json::array();
          for (const auto& p : k.vertices) v.push_back(to_json(p));
          params["vertices"] = v;
        } else if constexpr (std::is_same_v<K, IrrationalCusp>) {
          kind = "irrational_cusp";
        } else if constexpr (std::is_same_v<K, CuspCurve>) {
          kind = "cusp_curve";
        } else if constexpr (std::is_same_v<K, DihedralRegion>) {
          kind = "dihedral_region";
          params["d"] = k.d;
        } else if constexpr (std::is_same_v<K, HalfSpace>) {
          kind = "half_space";
          params["normal"] = to_json(k.normal);
          params["offset"] = to_json(k.offset);
        } else {
          kind = "union";
          Json m = Json::array();
          for (const auto& x : k.members) m.push_back(to_json(x));
          params["members"] = m;
        }
      },
      s.kind());
  return {{"kind", kind}, {"params", params}, {"chars", chars_json(s.declared_chars())}, {"simple", s.simple()}};
}

inline CuspidalSet set_from(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  std::optional<std::vector<UPCCharacteristic>> chars;
  if (j.contains("chars")) {
    chars.emplace();
    for (const auto& c : j.at("chars")) {
      if (!c.is_array() || c.size() != 3) throw ParseError("characteristic must be [m, D, \"M\"]");
      chars->push_back({c[0].get<int>(), c[1].get<int>(), rational_from(c[2])});
    }
  }
  const auto with_chars = [&](CuspidalSet s) {
    if (!chars) return s;
    return CuspidalSet(s.kind(), *chars, j.value("simple", s.simple()));
  };
  if (kind == "horn") return with_chars(CuspidalSet::horn(static_cast<int>(int_field(params, "D", 1))));
  if (kind == "orthant") return with_chars(CuspidalSet::orthant(static_cast<std::size_t>(int_field(params, "n", 2))));
  if (kind == "holder_cusp")
    return with_chars(CuspidalSet::holder_cusp(static_cast<int>(int_field(params, "m", 1)),
                                               static_cast<std::size_t>(int_field(params, "n", 2)),
                                               params.contains("r") ? rational_from(params["r"]) : Rational(1),
                                               params.contains("h") ? rational_from(params["h"]) : Rational(1)));
  if (kind == "truncated_cusp") {
    const Json& a = field(params, "alpha");
    CuspExponent alpha = (a.is_string() && a.get<std::string>() == "sqrt2") ? CuspExponent(Sqrt2{}) : CuspExponent(rational_from(a));
    return CuspidalSet::truncated_cusp(std::move(alpha), rational_from(field(params, "r")), rational_from(field(params, "h")),
                                       static_cast<std::size_t>(int_field(params, "n", 2)), chars.value_or(std::vector<UPCCharacteristic>{}));
  }
  if (kind == "simplex") {
    if (params.contains("vertices")) {
      std::vector<RationalVector> v;
      for (const auto& p : params["vertices"]) v.push_back(vector_from(p));
      return CuspidalSet::simplex(std::move(v), chars.value_or(std::vector<UPCCharacteristic>{}));
    }
    return with_chars(CuspidalSet::standard_simplex(static_cast<std::size_t>(int_field(params, "n", 2))));
  }
  if (kind == "irrational_cusp") return with_chars(CuspidalSet::irrational_cusp());
  if (kind == "cusp_curve") return with_chars(CuspidalSet::cusp_curve());
  if (kind == "dihedral_region") return with_chars(CuspidalSet::dihedral_region(static_cast<int>(int_field(params, "d", 3))));
  if (kind == "half_space")
    return with_chars(CuspidalSet::half_space(vector_from(field(params, "normal")), rational_from(field(params, "offset"))));
  if (kind == "union") {
    std::vector<CuspidalSet> m;
    for (const auto& x : field(params, "members")) m.push_back(set_from(x));
    return CuspidalSet(SetUnion{std::move(m)}, chars.value_or(std::vector<UPCCharacteristic>{}), j.value("simple", false));
  }
  throw ParseError("unknown set kind '" + kind + "'");
}

// --- expressions ----------------------------------------------------------------
// Prefix arrays: ["add", a, b], ["pow", base, "1/3"], {"var": 0}, "p/q" or 3.

inline Json to_json(const Expression& e) {
  using Op = Expression::Op;
  const auto& a = e.args();
  switch (e.op()) {
    case Op::Const: return to_json(e.value());
    case Op::Var: return {{"var", e.index()}};
    case Op::Add: return Json::array({"add", to_json(a[0]), to_json(a[1])});
    case Op::Sub: return Json::array({"sub", to_json(a[0]), to_json(a[1])});
    case Op::Mul: return Json::array({"mul", to_json(a[0]), to_json(a[1])});
    case Op::Div: return Json::array({"div", to_json(a[0]), to_json(a[1])});
    case Op::Neg: return Json::array({"neg", to_json(a[0])});
    case Op::Exp: return Json::array({"exp", to_json(a[0])});
    case Op::Pow: return Json::array({"pow", to_json(a[0]), to_json(e.value())});
    case Op::CuspRoot: return Json::array({"cusp_root", to_json(a[0]), to_json(a[1])});
  }
  throw Error("bad expression node");
}

inline Expression expression_from(const Json& j) {
  if (j.is_number_integer() || j.is_string()) return Expression::constant(rational_from(j));
  if (j.is_object()) {
    const long i = int_field(j, "var", -1);
    if (i < 0) throw ParseError("variable node needs a nonnegative \"var\" index");
    return Expression::variable(static_cast<std::size_t>(i));
  }
  if (!j.is_array() || j.empty() || !j[0].is_string()) throw ParseError("expression must be a prefix array");
  const std::string op = j[0].get<std::string>();
  const auto need = [&](std::size_t k) {
    if (j.size() != k + 1) throw ParseError("operator '" + op + "' takes " + std::to_string(k) + " arguments");
  };
  if (op == "neg" || op == "exp") {
    need(1);
    const Expression a = expression_from(j[1]);
    return op == "neg" ? -a : exp(a);
  }
  need(2);
  if (op == "pow") return pow(expression_from(j[1]), rational_from(j[2]));
  const Expression a = expression_from(j[1]), b = expression_from(j[2]);
  if (op == "add") return a + b;
  if (op == "sub") return a - b;
  if (op == "mul") return a * b;
  if (op == "div") return a / b;
  if (op == "cusp_root") return cusp_root(a, b);
  throw ParseError("unknown operator '" + op + "'");
}

// --- witnesses and verdicts ------------------------------------------------------

inline Json to_json(const UPCWitness& w) {
  Json b = Json::array();
  for (const auto& v : w.basis) b.push_back(to_json(v));
  return {{"x", to_json(w.x)}, {"h", to_json(w.h)}, {"m", w.m}, {"M", to_json(w.M)}, {"basis", b}};
}

inline UPCWitness witness_from(const Json& j) {
  UPCWitness w{vector_from(field(j, "x")), polymap_from(field(j, "h")), static_cast<int>(int_field(j, "m", 1)),
               rational_from(field(j, "M")), {}};
  for (const auto& v : field(j, "basis")) w.basis.push_back(vector_from(v));
  return w;
}

inline Json to_json(const ContainmentVerdict& v) {
  Json j{{"verdict", to_string(v.tag)}, {"trace", v.trace}};
  if (v.tag == ContainmentVerdict::Tag::SampledEvidence) {
    j["samples"] = v.samples;
    j["max_radius"] = to_json(v.max_radius);
  }
  if (v.refuted()) {
    j["witness_param"] = to_json(v.witness_param);
    j["witness_point"] = to_json(v.witness_point);
  }
  return j;
}

/// Doubles are rounded to a fixed decimal text so reports stay byte-stable.
inline std::string fixed(double v, int digits = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string sci(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

inline Json to_json(const AnalyticityVerdict& v) {
  Json j{{"verdict", to_string(v.tag)}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.polynomial) j["polynomial"] = to_json(*v.polynomial);
  if (v.radius) {
    j["radius_estimate"] = fixed(v.radius->radius);
    j["window"] = {v.radius->window_first, v.radius->window_last};
  }
  if (v.tag == AnalyticityVerdict::Tag::FlatNonzero) {
    j["witness_t"] = to_json(v.witness_t);
    j["value_lower_bound"] = v.value_lower;
    j["value_log10"] = fixed(v.value_log10, 3);
  }
  return j;
}

inline Json to_json(const RankReport& r) {
  return {{"map", r.map_id}, {"generic_rank", r.generic_rank}, {"trials", r.trials}, {"witness", to_json(r.witness)},
          {"seed", r.seed}};
}

inline Json to_json(const PlotDegreeResult& r) {
  Json j{{"trace", r.trace}};
  if (r.degree) j["min_degree"] = *r.degree;
  else j["result"] = "NoNonconstantPlot";
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

/// Deterministic text: sorted keys (nlohmann objects are ordered maps).
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace analytica::io
