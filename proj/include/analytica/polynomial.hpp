#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "analytica/error.hpp"
#include "analytica/interval.hpp"
#include "analytica/rational.hpp"

namespace analytica {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Sparse multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
namespace detail {
// the member Polynomial::pow hides the Interval overloads inside the class
inline Interval interval_pow(const Interval& a, long k) { return pow(a, k); }
} // namespace detail

class Polynomial {
public:
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw DimensionError("variable index out of range");
    Exponents e(nvars, 0);
    e[index] = 1;
    return monomial(e, Rational(1));
  }

  static Polynomial monomial(const Exponents& exps, const Rational& c) {
    Polynomial p(exps.size());
    p.add_term(exps, c);
    return p;
  }

  /// Univariate polynomial from coefficients c0 + c1 t + ...
  static Polynomial univariate(const std::vector<Rational>& coefficients) {
    Polynomial p(1);
    for (std::size_t k = 0; k < coefficients.size(); ++k) p.add_term({static_cast<int>(k)}, coefficients[k]);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponents& exps, const Rational& c) {
    if (exps.size() != nvars_) throw DimensionError("monomial arity does not match polynomial");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exps, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponents& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponents(nvars_, 0)); }

  /// Maximal total degree; the zero polynomial has degree 0 by convention.
  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, analytica::total_degree(e));
    return d;
  }

  /// Lowest total degree of a nonzero term.
  int order() const {
    if (is_zero()) throw ZeroPolynomialError("order of the zero polynomial");
    int d = analytica::total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_) d = std::min(d, analytica::total_degree(e));
    return d;
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && analytica::total_degree(terms_.begin()->first) == 0);
  }

  Polynomial truncated(int max_degree) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_)
      if (analytica::total_degree(e) <= max_degree) r.terms_.emplace(e, c);
    return r;
  }

  Polynomial homogeneous_part(int degree) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_)
      if (analytica::total_degree(e) == degree) r.terms_.emplace(e, c);
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b, -1); }

  /// Product keeping only terms of total degree <= max_degree (all when < 0).
  static Polynomial multiply(const Polynomial& a, const Polynomial& b, int max_degree) {
    a.check_arity(b);
    Polynomial r(a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      const int da = analytica::total_degree(ea);
      for (const auto& [eb, cb] : b.terms_) {
        if (max_degree >= 0 && da + analytica::total_degree(eb) > max_degree) continue;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(unsigned k, int max_degree = -1) const {
    Polynomial result = constant(nvars_, Rational(1));
    Polynomial base = *this;
    while (k != 0) {
      if (k & 1U) result = multiply(result, base, max_degree);
      k >>= 1U;
      if (k != 0) base = multiply(base, base, max_degree);
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
    // cache powers per variable
    std::vector<std::vector<Rational>> powers(nvars_);
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(Rational(1));
        while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * point[i]);
        term *= pw[static_cast<std::size_t>(e[i])];
      }
      sum += term;
    }
    return sum;
  }

  Rational evaluate(const Rational& t) const {
    const Rational pt[1] = {t};
    return evaluate(std::span<const Rational>(pt, 1));
  }

  Interval evaluate(std::span<const Interval> point) const {
    if (point.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
    const mpfr_prec_t prec = point.empty() ? default_precision() : point[0].precision();
    Interval sum(Rational(0), prec);
    for (const auto& [e, c] : terms_) {
      Interval term(c, prec);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i] != 0) term *= detail::interval_pow(point[i], e[i]);
      sum += term;
    }
    return sum;
  }

  Polynomial derivative(std::size_t index) const {
    if (index >= nvars_) throw DimensionError("derivative index out of range");
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[index] == 0) continue;
      Exponents d = e;
      d[index] -= 1;
      r.add_term(d, c * e[index]);
    }
    return r;
  }

  /// Substitutes subs[i] for variable i. All substitutes share one arity.
  Polynomial compose(const std::vector<Polynomial>& subs, int max_degree = -1) const {
    if (subs.size() != nvars_) throw DimensionError("composition arity mismatch");
    const std::size_t target = subs.empty() ? 0 : subs.front().nvars();
    for (const auto& s : subs)
      if (s.nvars() != target) throw DimensionError("substitutes have different arities");
    std::vector<std::vector<Polynomial>> powers(nvars_);
    Polynomial result(target);
    for (const auto& [e, c] : terms_) {
      Polynomial term = constant(target, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(target, Rational(1)));
        while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(multiply(pw.back(), subs[i], max_degree));
        term = multiply(term, pw[static_cast<std::size_t>(e[i])], max_degree);
      }
      result += term;
    }
    return result;
  }

  /// Univariate coefficient list c0..c_deg (requires one variable).
  std::vector<Rational> univariate_coefficients() const {
    if (nvars_ != 1) throw DimensionError("not a univariate polynomial");
    std::vector<Rational> out(static_cast<std::size_t>(total_degree()) + 1, Rational(0));
    for (const auto& [e, c] : terms_) out[static_cast<std::size_t>(e[0])] = c;
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.get_str() + ")";
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        s += "*x" + std::to_string(i + 1);
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
      }
    }
    return s;
  }

private:
  void check_arity(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw DimensionError("polynomial arity mismatch");
  }

  std::size_t nvars_;
  TermMap terms_;
};

/// Order and leading coefficient of a one-variable germ.
struct Valuation {
  int order;
  Rational leading;
};

inline Valuation valuation(const Polynomial& p) {
  if (p.nvars() != 1) throw DimensionError("valuation requires a univariate polynomial");
  if (p.is_zero()) throw ZeroPolynomialError("valuation of the zero polynomial");
  const auto& [e, c] = *p.terms().begin(); // map order: lowest exponent first
  return {e[0], c};
}

/// Exact division of univariate polynomials; returns nullopt when the
/// remainder is nonzero.
inline std::optional<Polynomial> divide_exact(const Polynomial& num, const Polynomial& den) {
  if (num.nvars() != 1 || den.nvars() != 1) throw DimensionError("univariate division only");
  if (den.is_zero()) throw DomainError("division by the zero polynomial");
  auto n = num.univariate_coefficients();
  const auto d = den.univariate_coefficients();
  if (num.is_zero()) return Polynomial(1);
  const std::size_t dd = d.size() - 1;
  if (n.size() < d.size()) return std::nullopt;
  std::vector<Rational> q(n.size() - dd, Rational(0));
  for (std::size_t k = n.size(); k-- > dd;) {
    const Rational f = n[k] / d[dd];
    q[k - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) n[k - dd + j] -= f * d[j];
  }
  for (std::size_t k = 0; k < dd; ++k)
    if (n[k] != 0) return std::nullopt;
  return Polynomial::univariate(q);
}

/// Polynomial map R^m -> R^n with exact coefficients.
class PolynomialMap {
public:
  PolynomialMap() = default;
  PolynomialMap(std::size_t source_dim, std::vector<Polynomial> components)
      : source_dim_(source_dim), components_(std::move(components)) {
    for (const auto& c : components_)
      if (c.nvars() != source_dim_) throw DimensionError("component arity differs from source dimension");
  }

  static PolynomialMap identity(std::size_t n) {
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < n; ++i) comps.push_back(Polynomial::variable(n, i));
    return {n, std::move(comps)};
  }

  /// x -> A x + b with A given row-major (rows = target dimension).
  static PolynomialMap affine(const std::vector<RationalVector>& matrix, const RationalVector& offset) {
    if (matrix.size() != offset.size()) throw DimensionError("affine map rows/offset mismatch");
    const std::size_t m = matrix.empty() ? 0 : matrix.front().size();
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      if (matrix[i].size() != m) throw DimensionError("ragged affine matrix");
      Polynomial p = Polynomial::constant(m, offset[i]);
      for (std::size_t j = 0; j < m; ++j) p += Polynomial::variable(m, j) * matrix[i][j];
      comps.push_back(std::move(p));
    }
    return {m, std::move(comps)};
  }

  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return components_.size(); }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_.at(i); }

  /// Max total degree over components; the zero map has degree 0.
  int degree() const {
    int d = 0;
    for (const auto& c : components_) d = std::max(d, c.total_degree());
    return d;
  }

  RationalVector evaluate(std::span<const Rational> point) const {
    if (point.size() != source_dim_) throw DimensionError("evaluation point has wrong dimension");
    RationalVector out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.evaluate(point));
    return out;
  }

  std::vector<Interval> evaluate(std::span<const Interval> point) const {
    std::vector<Interval> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.evaluate(point));
    return out;
  }

  friend bool operator==(const PolynomialMap& a, const PolynomialMap& b) {
    return a.source_dim_ == b.source_dim_ && a.components_ == b.components_;
  }

private:
  std::size_t source_dim_ = 0;
  std::vector<Polynomial> components_;
};

/// outer o inner; requires inner's target dimension to equal outer's source.
inline PolynomialMap compose_polymaps(const PolynomialMap& outer, const PolynomialMap& inner) {
  if (inner.target_dim() != outer.source_dim())
    throw DimensionError("compose_polymaps: inner target dimension " + std::to_string(inner.target_dim()) +
                         " != outer source dimension " + std::to_string(outer.source_dim()));
  std::vector<Polynomial> comps;
  comps.reserve(outer.target_dim());
  for (const auto& c : outer.components()) {
    if (inner.target_dim() == 0) {
      comps.push_back(Polynomial::constant(inner.source_dim(), c.constant_term()));
    } else {
      comps.push_back(c.compose(inner.components()));
    }
  }
  return {inner.source_dim(), std::move(comps)};
}

} // namespace analytica
