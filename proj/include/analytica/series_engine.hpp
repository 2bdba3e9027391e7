#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "analytica/error.hpp"
#include "analytica/expression.hpp"
#include "analytica/interval.hpp"
#include "analytica/polynomial.hpp"
#include "analytica/series.hpp"

namespace analytica {

/// exp(-c/u) with c > 0 and u > 0 on the punctured germ: every Taylor
/// coefficient vanishes, no series arithmetic is attempted.
struct StructuralFlat {
  std::string pattern;
};

using CompositeGerm = std::variant<TruncatedSeries, StructuralFlat>;

inline constexpr int kDefaultSeriesOrder = 40;

namespace detail {

struct GermValue {
  bool flat = false;
  std::string pattern;                // flat
  std::optional<TruncatedSeries> series; // !flat
  std::optional<Polynomial> exact;    // composite is exactly this polynomial
};

class CompositeBuilder {
public:
  CompositeBuilder(const PolynomialMap& p, int K) : p_(p), K_(K), arity_(p.source_dim()) {}

  GermValue eval(const Expression& f) const {
    using Op = Expression::Op;
    const auto& a = f.args();
    switch (f.op()) {
      case Op::Const: {
        Polynomial c = Polynomial::constant(arity_, f.value());
        return series_of(c, c);
      }
      case Op::Var: {
        if (f.index() >= p_.target_dim()) throw DimensionError("expression uses more variables than the map provides");
        return series_of(p_[f.index()], p_[f.index()]);
      }
      case Op::Add:
      case Op::Sub: return add(eval(a[0]), eval(a[1]), f.op() == Op::Sub);
      case Op::Mul: return mul(eval(a[0]), eval(a[1]));
      case Op::Neg: {
        GermValue v = eval(a[0]);
        if (v.flat) return v;
        v.series = -*v.series;
        if (v.exact) v.exact = -*v.exact;
        return v;
      }
      case Op::Div: return div(eval(a[0]), eval(a[1]));
      case Op::Exp: return exp_node(f);
      case Op::Pow: return pow_node(eval(a[0]), f.value());
      case Op::CuspRoot: return cusp_root_node(eval(a[0]), eval(a[1]));
    }
    throw Error("bad expression node");
  }

private:
  GermValue series_of(const Polynomial& p, std::optional<Polynomial> exact) const {
    GermValue v;
    v.series = TruncatedSeries(p, K_);
    v.exact = std::move(exact);
    return v;
  }

  static GermValue flat(std::string pattern) {
    GermValue v;
    v.flat = true;
    v.pattern = std::move(pattern);
    return v;
  }

  static bool zero(const GermValue& v) { return !v.flat && v.series->is_zero() && v.exact && v.exact->is_zero(); }

  GermValue add(const GermValue& x, const GermValue& y, bool subtract) const {
    if (x.flat && y.flat) return flat(x.pattern);
    if (x.flat || y.flat) {
      const GermValue& other = x.flat ? y : x;
      if (zero(other)) return x.flat ? x : flat(y.pattern);
      throw InconclusiveError("flat germ added to a nonzero series");
    }
    GermValue v;
    v.series = subtract ? *x.series - *y.series : *x.series + *y.series;
    if (x.exact && y.exact) v.exact = subtract ? *x.exact - *y.exact : *x.exact + *y.exact;
    return v;
  }

  GermValue mul(const GermValue& x, const GermValue& y) const {
    if (x.flat || y.flat) {
      if (zero(x) || zero(y)) return series_of(Polynomial(arity_), Polynomial(arity_));
      return flat(x.flat ? x.pattern : y.pattern);
    }
    GermValue v;
    v.series = *x.series * *y.series;
    if (x.exact && y.exact && x.series->exp_scale() == 0 && y.series->exp_scale() == 0) v.exact = *x.exact * *y.exact;
    return v;
  }

  GermValue div(const GermValue& x, const GermValue& y) const {
    if (y.flat) throw PoleAtOriginError("division by a flat germ");
    if (y.series->is_zero()) {
      if (y.exact && y.exact->is_zero()) throw DomainError("division by zero");
      throw InconclusiveError("denominator vanishes to the computed order");
    }
    if (y.series->constant_term() == 0) throw PoleAtOriginError("division by a germ vanishing at 0");
    const TruncatedSeries inv = y.series->inverse();
    if (x.flat) return x;
    GermValue v;
    v.series = *x.series * inv;
    if (x.exact && y.exact && arity_ == 1 && x.series->exp_scale() == 0 && y.series->exp_scale() == 0)
      v.exact = divide_exact(*x.exact, *y.exact);
    return v;
  }

  /// Matches -c/u or (-c)/u; returns (c, u) when c is a rational constant.
  std::optional<std::pair<Rational, GermValue>> flat_pattern(const Expression& w) const {
    using Op = Expression::Op;
    const Expression* quotient = nullptr;
    bool negated = false;
    if (w.op() == Op::Neg && w.arg(0).op() == Op::Div) {
      quotient = &w.arg(0);
      negated = true;
    } else if (w.op() == Op::Div) {
      quotient = &w;
    }
    if (!quotient) return std::nullopt;
    const GermValue num = eval(quotient->arg(0));
    if (num.flat || !num.exact || !num.exact->is_constant() || num.series->exp_scale() != 0) return std::nullopt;
    Rational c = num.exact->constant_term();
    if (!negated) c = -c;
    if (c <= 0) return std::nullopt;
    GermValue u = eval(quotient->arg(1));
    if (u.flat || u.series->exp_scale() != 0 || u.series->is_zero() || u.series->constant_term() != 0) return std::nullopt;
    return std::make_pair(c, std::move(u));
  }

  GermValue exp_node(const Expression& f) const {
    if (auto m = flat_pattern(f.arg(0))) {
      const TruncatedSeries& u = *m->second.series;
      if (arity_ != 1) throw InconclusiveError("exp(-c/u) pattern: positivity of u only certified in one variable");
      const int k = u.valuation();
      const Rational lead = u.coefficient(k);
      // u = lead t^k (1 + ...) is positive on both sides iff lead > 0, k even
      if (lead > 0 && k % 2 == 0)
        return flat("exp(-" + m->first.get_str() + "/u), ord u = " + std::to_string(k));
      throw PoleAtOriginError("exp(-c/u) with u not positive on the punctured germ");
    }
    const GermValue w = eval(f.arg(0));
    if (w.flat) throw InconclusiveError("exp of a flat germ: 1 + flat remainder");
    const TruncatedSeries& s = *w.series;
    if (s.exp_scale() != 0) throw InconclusiveError("exp of a series carrying an exponential factor");
    const Rational c0 = s.constant_term();
    TruncatedSeries shifted = s - TruncatedSeries::constant(arity_, c0, K_);
    TruncatedSeries e = shifted.exp_no_constant();
    GermValue v;
    v.series = TruncatedSeries(e.polynomial(), e.order(), c0);
    if (w.exact && w.exact->is_zero()) v.exact = Polynomial::constant(arity_, Rational(1));
    return v;
  }

  GermValue pow_node(const GermValue& b, const Rational& a) const {
    if (b.flat) {
      if (a <= 0) throw PoleAtOriginError("nonpositive power of a flat germ");
      return b;
    }
    const TruncatedSeries& s = *b.series;
    if (is_integer(a) && a >= 0) {
      const unsigned k = static_cast<unsigned>(a.get_num().get_ui());
      TruncatedSeries r = TruncatedSeries::constant(arity_, Rational(1), K_);
      for (unsigned i = 0; i < k; ++i) r = r * s;
      GermValue v;
      v.series = r;
      if (b.exact && s.exp_scale() == 0) v.exact = b.exact->pow(k);
      return v;
    }
    if (s.is_zero()) {
      if (b.exact && b.exact->is_zero()) {
        if (a > 0) return series_of(Polynomial(arity_), Polynomial(arity_));
        throw PoleAtOriginError("negative power of zero");
      }
      throw InconclusiveError("power base vanishes to the computed order");
    }
    const Rational c0 = s.constant_term();
    if (c0 != 0) {
      if (c0 < 0 && !is_integer(a)) throw DomainError("pow guard: base negative at 0");
      // b^a = c0^a (1 + u)^a, e^(scale a)
      std::optional<Rational> lead = exact_rational_power(c0, a);
      if (!lead) throw InconclusiveError("c^a is irrational for the constant term c = " + c0.get_str());
      TruncatedSeries u{(s.polynomial() - Polynomial::constant(arity_, c0)) * Rational(1 / c0), K_};
      TruncatedSeries r = u.one_plus_pow(a) * *lead;
      GermValue v;
      v.series = TruncatedSeries(r.polynomial(), K_, s.exp_scale() * a);
      return v;
    }
    if (!is_integer(a) && a < 0) throw PoleAtOriginError("negative fractional power of a germ vanishing at 0");
    if (is_integer(a)) throw PoleAtOriginError("negative power of a germ vanishing at 0");
    if (arity_ != 1) throw InconclusiveError("fractional power of a vanishing multivariate germ");
    const int k = s.valuation();
    const Rational lead = s.coefficient(k);
    if (lead < 0 || k % 2 != 0) throw DomainError("pow guard: base takes negative values near 0");
    const Rational ka = a * k;
    if (!is_integer(ka) || ka.get_num() % 2 != 0)
      throw InconclusiveError("|t|^(k a) with k a = " + ka.get_str() + " is not a polynomial germ");
    std::optional<Rational> lc = exact_rational_power(lead, a);
    if (!lc) throw InconclusiveError("leading coefficient power is irrational");
    // s = lead t^k (1 + u)
    Polynomial rest(1);
    for (const auto& [e, c] : s.polynomial().terms())
      if (e[0] > k) rest.add_term({e[0] - k}, c / lead);
    TruncatedSeries u{rest, K_};
    TruncatedSeries r = u.one_plus_pow(a);
    const int shift = static_cast<int>(ka.get_num().get_si());
    Polynomial shifted(1);
    for (const auto& [e, c] : r.polynomial().terms()) shifted.add_term({e[0] + shift}, c * *lc);
    GermValue v;
    v.series = TruncatedSeries(shifted, K_, s.exp_scale() * a);
    return v;
  }

  /// y^(1/3) along a plot into x^3 = y^2: u^2 = x, u^3 = y, so u = y/x.
  GermValue cusp_root_node(const GermValue& x, const GermValue& y) const {
    if (x.flat || y.flat) throw InconclusiveError("cusp_root of a flat germ");
    if (arity_ != 1) throw UnsupportedError("cusp_root is evaluated along one-parameter plots");
    if (!x.exact || !y.exact) throw UnsupportedError("cusp_root needs polynomial arguments");
    const Polynomial& X = *x.exact;
    const Polynomial& Y = *y.exact;
    if (!(X.pow(3) == Y.pow(2))) throw DomainError("cusp_root: plot is not contained in x^3 = y^2");
    if (X.is_zero()) return series_of(Polynomial(1), Polynomial(1));
    const int kx = X.order();
    const int ky = Y.order();
    if (ky < kx) throw DomainError("cusp_root: ord y < ord x");
    if (auto q = divide_exact(Y, X)) return series_of(*q, *q);
    // remove t^kx and divide by the unit X / t^kx
    Polynomial xs(1), ys(1);
    for (const auto& [e, c] : X.terms()) xs.add_term({e[0] - kx}, c);
    for (const auto& [e, c] : Y.terms()) ys.add_term({e[0] - kx}, c);
    GermValue v;
    v.series = TruncatedSeries(ys, K_) * TruncatedSeries(xs, K_).inverse();
    return v;
  }

  const PolynomialMap& p_;
  int K_;
  std::size_t arity_;
};

inline GermValue composite(const Expression& f, const PolynomialMap& p, int K) {
  if (K < 0) throw DomainError("series order must be >= 0");
  if (f.arity() > p.target_dim()) throw DimensionError("expression arity exceeds map target dimension");
  return CompositeBuilder(p, K).eval(f);
}

} // namespace detail

/// Exact Taylor series of f o p to order K, or StructuralFlat when an
/// exp(-c/u) subtree is flat at 0.
inline CompositeGerm taylor_of_composite(const Expression& f, const PolynomialMap& p, int K = kDefaultSeriesOrder) {
  detail::GermValue v = detail::composite(f, p, K);
  if (v.flat) return StructuralFlat{v.pattern};
  return *v.series;
}

struct AnalyticityVerdict {
  enum class Tag { PolynomialExact, AnalyticEvidence, FlatNonzero, Inconclusive };
  Tag tag = Tag::Inconclusive;
  std::optional<TruncatedSeries> series;
  std::optional<Polynomial> polynomial; // PolynomialExact
  std::optional<RadiusEstimate> radius; // AnalyticEvidence
  Rational witness_t{0};                // FlatNonzero
  double value_log10 = 0;               // FlatNonzero: log10 of the certified lower bound of |f(p(t0))|
  std::string value_lower;              // FlatNonzero: decimal lower bound of |f(p(t0))|
  std::string reason;
};

inline std::string to_string(AnalyticityVerdict::Tag t) {
  switch (t) {
    case AnalyticityVerdict::Tag::PolynomialExact: return "PolynomialExact";
    case AnalyticityVerdict::Tag::AnalyticEvidence: return "AnalyticEvidence";
    case AnalyticityVerdict::Tag::FlatNonzero: return "FlatNonzero";
    case AnalyticityVerdict::Tag::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Certified enclosure of f(p(t)).
inline Interval evaluate_composite(const Expression& f, const PolynomialMap& p, const Rational& t,
                                   mpfr_prec_t prec = default_precision()) {
  const Rational tp[1] = {t};
  const RationalVector x = p.evaluate(std::span<const Rational>(tp, 1));
  return f.evaluate(std::span<const Rational>(x), prec);
}

/// Classifies the germ of f o p at 0 (p one-parameter). FlatNonzero needs
/// the structural pattern and a certified nonzero value at a punctured
/// point t0 in 1/10, -1/10, 1/100, ...
inline AnalyticityVerdict classify_analyticity(const Expression& f, const PolynomialMap& p, int K = kDefaultSeriesOrder) {
  if (p.source_dim() != 1) throw DimensionError("classify_analyticity needs a one-parameter map");
  AnalyticityVerdict v;
  detail::GermValue g;
  try {
    g = detail::composite(f, p, K);
  } catch (const InconclusiveError& e) {
    v.reason = e.what();
    return v;
  }
  if (g.flat) {
    for (int e = 1; e <= 6; ++e) {
      for (int s : {1, -1}) {
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(e));
        Rational t(s, den);
        t.canonicalize();
        Interval val = evaluate_composite(f, p, t);
        if (val.contains_zero()) continue;
        v.tag = AnalyticityVerdict::Tag::FlatNonzero;
        v.witness_t = t;
        const Real lo = val.certainly_positive() ? val.lo() : Real((-val).lo());
        v.value_log10 = lo.log10_abs();
        v.value_lower = lo.to_string(12);
        v.series = TruncatedSeries(Polynomial(1), K);
        v.reason = g.pattern;
        return v;
      }
    }
    v.reason = "flat pattern but no certified nonzero value found";
    return v;
  }
  v.series = *g.series;
  if (g.exact && g.series->exp_scale() == 0) {
    v.tag = AnalyticityVerdict::Tag::PolynomialExact;
    v.polynomial = *g.exact;
    return v;
  }
  try {
    const RadiusEstimate r = radius_estimate(*g.series);
    if (r.divergent) {
      v.reason = "coefficient growth is erratic at order " + std::to_string(K) + " (divergent tail)";
      return v;
    }
    v.tag = AnalyticityVerdict::Tag::AnalyticEvidence;
    v.radius = r;
  } catch (const InconclusiveError& e) {
    v.reason = e.what();
  }
  return v;
}

struct LineSample {
  RationalVector base;
  RationalVector direction;
};

/// Classifies t -> f(p(x + t v)) for each sampled base point and direction.
inline std::vector<AnalyticityVerdict> line_restriction_check(const Expression& f, const PolynomialMap& p,
                                                              const std::vector<LineSample>& lines,
                                                              int K = kDefaultSeriesOrder) {
  std::vector<AnalyticityVerdict> out;
  for (const auto& l : lines) {
    if (l.base.size() != p.source_dim() || l.direction.size() != p.source_dim())
      throw DimensionError("line sample dimension does not match map source");
    std::vector<RationalVector> col(p.source_dim(), RationalVector(1));
    for (std::size_t i = 0; i < p.source_dim(); ++i) col[i][0] = l.direction[i];
    const PolynomialMap line = PolynomialMap::affine(col, l.base);
    out.push_back(classify_analyticity(f, compose_polymaps(p, line), K));
  }
  return out;
}

} // namespace analytica
