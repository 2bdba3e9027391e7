#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "analytica/error.hpp"
#include "analytica/polynomial.hpp"
#include "analytica/quadratic_surd.hpp"
#include "analytica/set_catalog.hpp"

namespace analytica {

struct ContainmentVerdict {
  enum class Tag { Certified, SampledEvidence, Refuted };
  Tag tag = Tag::Certified;
  std::size_t samples = 0;       // SampledEvidence
  Rational max_radius{0};        // SampledEvidence
  RationalVector witness_param;  // Refuted
  RationalVector witness_point;  // Refuted
  std::vector<std::string> trace;

  bool certified() const { return tag == Tag::Certified; }
  bool refuted() const { return tag == Tag::Refuted; }
};

inline std::string to_string(ContainmentVerdict::Tag t) {
  switch (t) {
    case ContainmentVerdict::Tag::Certified: return "Certified";
    case ContainmentVerdict::Tag::SampledEvidence: return "SampledEvidence";
    case ContainmentVerdict::Tag::Refuted: return "Refuted";
  }
  return "?";
}

inline std::string to_string(const SurdRational& x) {
  if (x.b == 0) return x.a.get_str();
  std::string s = x.a == 0 ? std::string() : x.a.get_str() + (x.b > 0 ? "+" : "");
  return s + x.b.get_str() + "*sqrt2";
}

namespace detail {

/// A block of a one-variable germ: factor * tau^order * sum coeffs[i] tau^i,
/// with factor = base^exponent > 0 kept symbolic when it is irrational.
struct GermBlock {
  SurdRational order;
  std::optional<std::pair<Rational, SurdRational>> factor; // nullopt: factor 1
  std::vector<SurdRational> coeffs;
  bool finite = true; // coefficients are exact to all orders (not truncated)
};

inline constexpr std::size_t kGermTerms = 48;

inline bool integral_difference(const SurdRational& a, const SurdRational& b) {
  const SurdRational d = a - b;
  return d.b == 0 && is_integer(d.a);
}

/// (1 + u)^e to `terms` terms, u(0) = 0, via (1+u) F' = e u' F.
inline std::vector<SurdRational> binomial_series(const std::vector<Rational>& u, const SurdRational& e,
                                                 std::size_t terms = kGermTerms) {
  std::vector<SurdRational> f(terms, SurdRational());
  if (terms == 0) return f;
  f[0] = SurdRational(Rational(1));
  if (e.is_rational()) {
    std::vector<Rational> g(terms, Rational(0));
    g[0] = 1;
    Rational acc, w;
    for (std::size_t n = 1; n < terms; ++n) {
      acc = 0;
      for (std::size_t k = 1; k <= n && k < u.size(); ++k) {
        if (u[k] == 0 || g[n - k] == 0) continue;
        w = e.a * static_cast<long>(k) - static_cast<long>(n - k);
        acc += w * u[k] * g[n - k];
      }
      g[n] = acc / static_cast<long>(n);
      f[n] = SurdRational(g[n]);
    }
    return f;
  }
  for (std::size_t n = 1; n < terms; ++n) {
    SurdRational acc;
    for (std::size_t k = 1; k <= n && k < u.size(); ++k) {
      if (u[k] == 0 || f[n - k].is_zero()) continue;
      const SurdRational w = e * SurdRational(Rational(static_cast<long>(k))) -
                             SurdRational(Rational(static_cast<long>(n - k)));
      acc += w * SurdRational(u[k]) * f[n - k];
    }
    f[n] = acc * SurdRational(Rational(1, static_cast<long>(n)));
  }
  return f;
}

struct BlockSign {
  int sign = 0; // 0: identically zero
  std::optional<SurdRational> order;
  std::string note;
};

/// nullopt: truncated coefficients cancel within `terms`, retry with more.
inline std::optional<BlockSign> germ_sign_terms(const Polynomial& poly,
                                                const std::vector<std::pair<Polynomial, const PowerTerm*>>& powers,
                                                std::size_t terms) {
  std::vector<GermBlock> pieces;
  if (!poly.is_zero()) {
    const auto c = poly.univariate_coefficients();
    GermBlock b{SurdRational(Rational(0)), std::nullopt, {}, true};
    for (const auto& v : c) b.coeffs.emplace_back(v);
    pieces.push_back(std::move(b));
  }
  for (const auto& [base, term] : powers) {
    if (base.is_zero()) {
      if (term->exponent.sign() <= 0) throw DomainError("power term with zero base and nonpositive exponent");
      continue;
    }
    const Valuation v = valuation(base);
    if (v.leading < 0) return BlockSign{-1, std::nullopt, "power base negative near 0"};
    const auto bc = base.univariate_coefficients();
    std::vector<Rational> u(bc.size() - static_cast<std::size_t>(v.order), Rational(0));
    for (std::size_t j = 1; j < u.size(); ++j) u[j] = bc[static_cast<std::size_t>(v.order) + j] / v.leading;
    GermBlock b;
    b.order = SurdRational(Rational(v.order)) * term->exponent;
    b.finite = false;
    std::optional<Rational> folded;
    if (v.leading == 1) folded = Rational(1);
    else if (term->exponent.is_rational()) folded = exact_rational_power(v.leading, term->exponent.a);
    Rational scale = term->scale;
    if (folded) scale *= *folded;
    else b.factor = std::make_pair(v.leading, term->exponent);
    b.coeffs = binomial_series(u, term->exponent, u.size() == 1 ? 1 : terms);
    for (auto& c : b.coeffs) c = c * SurdRational(scale);
    // a unit base with polynomial exponent behaviour stays exact: (1+u)^k
    if (u.size() == 1) {
      b.coeffs.resize(1);
      b.finite = true;
    }
    pieces.push_back(std::move(b));
  }

  // merge pieces whose orders differ by integers and share the factor
  std::vector<GermBlock> groups;
  for (auto& p : pieces) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const GermBlock& g) {
      return g.factor == p.factor && integral_difference(g.order, p.order);
    });
    if (it == groups.end()) {
      groups.push_back(std::move(p));
      continue;
    }
    GermBlock& g = *it;
    if (p.order < g.order) std::swap(g, p);
    const std::size_t shift = static_cast<std::size_t>((p.order - g.order).a.get_num().get_ui());
    // truncation horizon: a truncated member limits the merged block
    std::size_t horizon = SIZE_MAX;
    if (!g.finite) horizon = g.coeffs.size();
    if (!p.finite) horizon = std::min(horizon, shift + p.coeffs.size());
    if (g.coeffs.size() < shift + p.coeffs.size()) g.coeffs.resize(shift + p.coeffs.size());
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) g.coeffs[shift + i] += p.coeffs[i];
    if (horizon != SIZE_MAX) {
      g.coeffs.resize(std::min(g.coeffs.size(), horizon));
      g.finite = false;
    }
  }

  struct Lead {
    SurdRational order;
    SurdRational coeff;
    const GermBlock* block;
  };
  std::vector<Lead> leads;
  for (const auto& g : groups) {
    auto nz = std::find_if(g.coeffs.begin(), g.coeffs.end(), [](const SurdRational& c) { return !c.is_zero(); });
    if (nz == g.coeffs.end()) {
      if (g.finite) continue;
      return std::nullopt;
    }
    leads.push_back({g.order + SurdRational(Rational(static_cast<long>(nz - g.coeffs.begin()))), *nz, &g});
  }
  if (leads.empty()) return BlockSign{0, std::nullopt, "identically zero"};
  auto lowest = std::min_element(leads.begin(), leads.end(), [](const Lead& a, const Lead& b) { return a.order < b.order; });
  const SurdRational order = lowest->order;
  std::vector<const Lead*> tied;
  for (const auto& l : leads)
    if (l.order == order) tied.push_back(&l);
  if (tied.size() == 1) return BlockSign{tied[0]->coeff.sign(), order, "leading coefficient " + to_string(tied[0]->coeff)};
  // distinct transcendental factors at one order: decide by enclosure
  const mpfr_prec_t prec = default_precision();
  Interval sum(Rational(0), prec);
  for (const Lead* l : tied) {
    Interval c = enclose(l->coeff, prec);
    if (l->block->factor) {
      const auto& [b, e] = *l->block->factor;
      c *= e.is_rational() ? pow(Interval(b, prec), e.a) : pow(Interval(b, prec), enclose(e, prec));
    }
    sum += c;
  }
  if (sum.certainly_positive()) return BlockSign{1, order, "tied leading terms, enclosure positive"};
  if (sum.certainly_negative()) return BlockSign{-1, order, "tied leading terms, enclosure negative"};
  throw IndeterminateError("tied leading terms with irrational factors cancel within the enclosure");
}

/// Sign of poly + sum scale*base^e along a univariate germ for tau -> 0+.
inline BlockSign germ_sign(const Polynomial& poly, const std::vector<std::pair<Polynomial, const PowerTerm*>>& powers) {
  if (auto s = germ_sign_terms(poly, powers, 6)) return *s;
  if (auto s = germ_sign_terms(poly, powers, kGermTerms)) return *s;
  throw IndeterminateError("germ coefficients cancel beyond the computed horizon");
}

/// p(s * tau) as univariate polynomials in tau.
inline std::vector<Polynomial> side_components(const PolynomialMap& p, int side) {
  std::vector<Polynomial> out;
  for (const auto& c : p.components()) {
    Polynomial q(1);
    for (const auto& [e, v] : c.terms()) q.add_term(e, (side < 0 && e[0] % 2 != 0) ? Rational(-v) : v);
    out.push_back(std::move(q));
  }
  return out;
}

struct SideReport {
  bool satisfied = true;
  std::vector<std::string> trace;
};

inline SideReport analyze_side(const std::vector<Polynomial>& comps, const CuspidalSet& set, int side) {
  SideReport r;
  const std::string tag = side > 0 ? "t>0" : "t<0";
  for (const auto& c : set.constraints()) {
    const Polynomial along = c.poly.compose(comps);
    std::vector<Polynomial> bases;
    bases.reserve(c.powers.size());
    for (const auto& pt : c.powers) bases.push_back(pt.base.compose(comps));
    std::vector<std::pair<Polynomial, const PowerTerm*>> powers;
    for (std::size_t i = 0; i < c.powers.size(); ++i) powers.emplace_back(bases[i], &c.powers[i]);
    if (c.relation == Relation::Zero && !powers.empty())
      throw UnsupportedError("equality constraint with power terms: " + c.label);
    const BlockSign s = germ_sign(along, powers);
    const bool ok = c.relation == Relation::Zero ? s.sign == 0 : s.sign >= 0;
    std::string line = tag + " " + set.name() + " [" + c.label + "]: ";
    if (s.sign == 0) line += "identically zero";
    else line += std::string("order ") + (s.order ? to_string(*s.order) : "?") + ", sign " + (s.sign > 0 ? "+" : "-") + " (" + s.note + ")";
    line += ok ? " ok" : " FAILS";
    r.trace.push_back(std::move(line));
    if (!ok) {
      r.satisfied = false;
      return r;
    }
  }
  return r;
}

inline void check_germ_input(const PolynomialMap& p, const CuspidalSet& set) {
  if (p.source_dim() != 1) throw DimensionError("germ_in_set needs a one-parameter map");
  if (p.target_dim() != set.dimension())
    throw DimensionError("map target dimension " + std::to_string(p.target_dim()) + " != set dimension " +
                         std::to_string(set.dimension()));
}

/// Whether the side tau -> 0+ of p(s tau) lies in the set (any union member).
inline SideReport side_in_set(const PolynomialMap& p, const CuspidalSet& set, int side) {
  const auto comps = side_components(p, side);
  if (const auto* u = std::get_if<SetUnion>(&set.kind())) {
    SideReport all;
    all.satisfied = false;
    for (const auto& m : u->members) {
      SideReport r = side_in_set(p, m, side);
      all.trace.insert(all.trace.end(), r.trace.begin(), r.trace.end());
      if (r.satisfied) {
        all.satisfied = true;
        break;
      }
    }
    return all;
  }
  return analyze_side(comps, set, side);
}

} // namespace detail

/// Exact two-sided germ containment of a one-parameter plot, without
/// searching for a refutation witness. Used by bulk enumerations.
inline bool germ_certified(const PolynomialMap& p, const CuspidalSet& set) {
  detail::check_germ_input(p, set);
  return detail::side_in_set(p, set, 1).satisfied && detail::side_in_set(p, set, -1).satisfied;
}

/// Decides whether p(t) lies in the set for all t in a punctured two-sided
/// neighbourhood of 0 by leading-order comparison per constraint. Orders
/// live in Q(sqrt 2) and are compared exactly.
inline ContainmentVerdict germ_in_set(const PolynomialMap& p, const CuspidalSet& set) {
  detail::check_germ_input(p, set);
  ContainmentVerdict v;
  int failing = 0;
  for (int side : {1, -1}) {
    auto r = detail::side_in_set(p, set, side);
    v.trace.insert(v.trace.end(), r.trace.begin(), r.trace.end());
    if (!r.satisfied) {
      failing = side;
      break;
    }
  }
  if (failing == 0) {
    v.tag = ContainmentVerdict::Tag::Certified;
    return v;
  }
  // the failing side is outside for every small tau; find a concrete one
  for (unsigned e = 1; e <= 400; ++e) {
    Rational t(failing, Integer(1) << e);
    t.canonicalize();
    const Rational tp[1] = {t};
    RationalVector pt = p.evaluate(std::span<const Rational>(tp, 1));
    if (classify(set, pt) == Membership::Outside) {
      v.tag = ContainmentVerdict::Tag::Refuted;
      v.witness_param = {t};
      v.witness_point = std::move(pt);
      v.trace.push_back("witness t = " + t.get_str());
      return v;
    }
  }
  throw InconclusiveError("germ fails a constraint but no rational witness was found down to 2^-400");
}

/// Sampling-level containment for plots of any source dimension: points of
/// the box [-r_i, r_i]^m with r_i shrinking linearly from radius.
inline ContainmentVerdict germ_in_set_sampled(const PolynomialMap& p, const CuspidalSet& set, const Rational& radius,
                                              std::size_t count, std::uint64_t seed) {
  if (p.target_dim() != set.dimension()) throw DimensionError("map target dimension does not match set");
  Rng rng(seed);
  ContainmentVerdict v;
  v.tag = ContainmentVerdict::Tag::SampledEvidence;
  v.max_radius = radius;
  std::size_t undecided = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Rational r = radius * Rational(static_cast<long>(count - i), static_cast<long>(count));
    RationalVector s(p.source_dim());
    for (auto& c : s) c = rng.rational_in(-r, r);
    RationalVector pt = p.evaluate(std::span<const Rational>(s));
    const Membership m = classify(set, pt);
    if (m == Membership::Outside) {
      v.tag = ContainmentVerdict::Tag::Refuted;
      v.witness_param = std::move(s);
      v.witness_point = std::move(pt);
      v.trace.push_back("sample " + std::to_string(i) + " outside");
      return v;
    }
    if (m == Membership::Indeterminate) ++undecided;
    else ++v.samples;
  }
  if (undecided) v.trace.push_back(std::to_string(undecided) + " samples undecided by enclosure");
  return v;
}

/// A polynomial map together with a non-refuted containment certificate.
struct Plot {
  PolynomialMap map;
  CuspidalSet set;
  ContainmentVerdict certificate;

  static Plot make(PolynomialMap map, CuspidalSet set) {
    ContainmentVerdict c = map.source_dim() == 1 ? germ_in_set(map, set)
                                                 : germ_in_set_sampled(map, set, Rational(1, 2), 1000, 1);
    if (c.refuted()) throw DomainError("not a plot in " + set.name());
    return {std::move(map), std::move(set), std::move(c)};
  }
};

struct PlotDegreeResult {
  std::optional<int> degree; // nullopt: no nonconstant plot through 0
  std::vector<std::string> trace;
  std::optional<PolynomialMap> witness;

  bool no_nonconstant_plot() const { return !degree; }
};

namespace detail {

inline PolynomialMap monomial_curve(const std::vector<std::pair<Rational, int>>& comps) {
  std::vector<Polynomial> c;
  for (const auto& [coef, e] : comps) c.push_back(Polynomial::monomial({e}, coef));
  return {1, std::move(c)};
}

inline std::string verdict_line(const std::string& what, const ContainmentVerdict& v) {
  return "checked " + what + " -> " + to_string(v.tag);
}

inline PlotDegreeResult horn_threshold(int D, std::optional<int> bound, const CuspidalSet& set) {
  PlotDegreeResult r;
  auto& tr = r.trace;
  const auto run = [&](const PolynomialMap& p, bool expect_certified, const std::string& what) {
    const ContainmentVerdict v = germ_in_set(p, set);
    if (v.certified() != expect_certified) throw Error("horn proof step failed: " + what);
    tr.push_back(verdict_line(what, v));
  };
  tr.push_back("p1 == 0 forces 0 <= p2 <= 0, so p is constant");
  tr.push_back("x >= 0 on both sides forces ord(p1) = k even, k >= 2");
  for (int k : {1, 3}) run(monomial_curve({{1, k}, {1, k * D}}), false, "(t^" + std::to_string(k) + ", t^" + std::to_string(k * D) + ")");
  tr.push_back("x^D <= p2 <= 2x^D forces ord(p2) = D*k with leading coefficient ratio in [1, 2]");
  for (int j = 1; j <= 2 * D + 2; ++j) {
    if (j == 2 * D) continue;
    run(monomial_curve({{1, 2}, {1, j}}), false, "(t^2, t^" + std::to_string(j) + ")");
  }
  for (const Rational& c : {Rational(1), Rational(3, 2), Rational(2)})
    run(monomial_curve({{1, 2}, {c, 2 * D}}), true, "(t^2, " + c.get_str() + " t^" + std::to_string(2 * D) + ")");
  for (const Rational& c : {Rational(1, 2), Rational(5, 2)})
    run(monomial_curve({{1, 2}, {c, 2 * D}}), false, "(t^2, " + c.get_str() + " t^" + std::to_string(2 * D) + ")");
  tr.push_back("deg p >= ord p2 = D*k >= 2D = " + std::to_string(2 * D));
  if (bound && *bound < 2 * D) {
    tr.push_back("degree bound " + std::to_string(*bound) + " < 2D: no nonconstant plot through 0");
    return r;
  }
  r.degree = 2 * D;
  r.witness = monomial_curve({{1, 2}, {1, 2 * D}});
  tr.push_back(verdict_line("witness (t^2, t^" + std::to_string(2 * D) + ")", germ_in_set(*r.witness, set)));
  return r;
}

inline PlotDegreeResult orthant_threshold(std::size_t n, std::optional<int> bound, const CuspidalSet& set) {
  PlotDegreeResult r;
  r.trace.push_back("degree-1 plot with p(0) = 0: p_i(t) = a_i t");
  // a_i t >= 0 on both sides of 0 is a sign condition on a_i alone
  for (std::size_t i = 0; i < n; ++i) {
    for (int sgn : {1, -1}) {
      std::vector<std::pair<Rational, int>> comps(n, {Rational(0), 0});
      comps[i] = {Rational(sgn), 1};
      std::vector<Polynomial> c;
      for (const auto& [coef, e] : comps) c.push_back(coef == 0 ? Polynomial(1) : Polynomial::monomial({e}, coef));
      const ContainmentVerdict v = germ_in_set(PolynomialMap(1, std::move(c)), set);
      if (!v.refuted()) throw Error("orthant proof step failed");
      r.trace.push_back(verdict_line("a_" + std::to_string(i + 1) + " " + (sgn > 0 ? "> 0" : "< 0"), v));
    }
  }
  r.trace.push_back("each a_i t is a linear functional nonnegative near 0, hence a_i = 0");
  if (bound && *bound <= 1) {
    r.trace.push_back("only the zero map");
    return r;
  }
  std::vector<std::pair<Rational, int>> sq(n, {Rational(1), 2});
  r.degree = 2;
  r.witness = monomial_curve(sq);
  r.trace.push_back(verdict_line("witness (t^2, ..., t^2)", germ_in_set(*r.witness, set)));
  return r;
}

inline PlotDegreeResult irrational_cusp_threshold(const CuspidalSet& set) {
  PlotDegreeResult r;
  auto& tr = r.trace;
  tr.push_back("p1 == 0 forces 0 <= p2 <= 0, so p is constant");
  tr.push_back("p1 != 0 with ord(p1) = k >= 1: ord(p1^sqrt2) = k*sqrt2 is irrational, ord(p2) is an integer");
  for (long k = 1; k <= 64; ++k) {
    const SurdOrder irr(0, k), two_k(2 * k, 0);
    // ord(p2 - p1^sqrt2) = min(ord p2, k sqrt2) <= k sqrt2 < 2k = ord(p1^2)
    if (!(irr < two_k)) throw Error("valuation comparison failed");
    if (irr.sign() <= 0) throw Error("valuation sign failed");
  }
  tr.push_back("k*sqrt2 < 2k exactly in Z + Z sqrt2 (checked k = 1..64; a^2 - 2b^2 sign)");
  tr.push_back("so |p2 - p1^sqrt2| has order <= k*sqrt2 < ord(p1^2) and leaves [0, p1^2] near 0");
  for (int k : {1, 2, 3}) {
    for (int j = 1; j <= 6; ++j) {
      const ContainmentVerdict v = germ_in_set(monomial_curve({{1, k}, {1, j}}), set);
      if (!v.refuted()) throw Error("irrational cusp spot check was not refuted");
    }
  }
  tr.push_back("spot checks (t^k, t^j), k <= 3, j <= 6: all Refuted");
  return r;
}

} // namespace detail

/// Minimal degree of a nonconstant one-parameter plot through 0, with a
/// proof trace whose finite steps are re-run through germ_in_set.
/// degree_bound restricts the plots considered (Orthant: bound 1).
inline PlotDegreeResult min_plot_degree_through_origin(const CuspidalSet& set, std::optional<int> degree_bound = std::nullopt) {
  if (const auto* h = std::get_if<Horn>(&set.kind())) return detail::horn_threshold(h->D, degree_bound, set);
  if (const auto* o = std::get_if<Orthant>(&set.kind())) return detail::orthant_threshold(o->n, degree_bound, set);
  if (std::holds_alternative<IrrationalCusp>(set.kind())) return detail::irrational_cusp_threshold(set);
  throw UnsupportedError("min_plot_degree_through_origin: unsupported set " + set.name());
}

} // namespace analytica
