#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "analytica/error.hpp"
#include "analytica/polynomial.hpp"
#include "analytica/rational.hpp"

namespace analytica {

/// Exact Taylor series truncated at total degree K, times the constant
/// factor e^exp_scale (kept symbolic so coefficients stay rational).
class TruncatedSeries {
public:
  TruncatedSeries(Polynomial p, int order, Rational exp_scale = Rational(0))
      : poly_(p.truncated(order)), order_(order), exp_scale_(std::move(exp_scale)) {
    if (order < 0) throw DomainError("series order must be >= 0");
  }

  static TruncatedSeries constant(std::size_t arity, const Rational& c, int order) {
    return {Polynomial::constant(arity, c), order};
  }

  std::size_t arity() const { return poly_.nvars(); }
  int order() const { return order_; }
  const Polynomial& polynomial() const { return poly_; }
  const Rational& exp_scale() const { return exp_scale_; }
  bool is_zero() const { return poly_.is_zero(); }
  Rational constant_term() const { return poly_.constant_term(); }

  /// Univariate coefficient a_k (0 past the truncation).
  Rational coefficient(int k) const {
    if (arity() != 1) throw DimensionError("coefficient(k) needs a univariate series");
    return poly_.coefficient({k});
  }
  std::vector<Rational> coefficients() const {
    std::vector<Rational> c(static_cast<std::size_t>(order_) + 1, Rational(0));
    for (int k = 0; k <= order_; ++k) c[static_cast<std::size_t>(k)] = coefficient(k);
    return c;
  }

  /// Lowest total degree with a nonzero coefficient; -1 for the zero series.
  int valuation() const { return poly_.is_zero() ? -1 : poly_.order(); }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const Rational s = common_scale(a, b);
    return {a.poly_ + b.poly_, std::min(a.order_, b.order_), s};
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    const Rational s = common_scale(a, b);
    return {a.poly_ - b.poly_, std::min(a.order_, b.order_), s};
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a) { return {-a.poly_, a.order_, a.exp_scale_}; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int k = std::min(a.order_, b.order_);
    return {Polynomial::multiply(a.poly_, b.poly_, k), k, Rational(a.exp_scale_ + b.exp_scale_)};
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const Rational& c) { return {a.poly_ * c, a.order_, a.exp_scale_}; }

  /// Graded parts of degree 0..K.
  std::vector<Polynomial> graded() const {
    std::vector<Polynomial> g(static_cast<std::size_t>(order_) + 1, Polynomial(arity()));
    for (const auto& [e, c] : poly_.terms()) g[static_cast<std::size_t>(total_degree(e))].add_term(e, c);
    return g;
  }

  /// exp(w) for w without constant term: n F_n = sum_k k W_k F_{n-k}
  /// (the Euler operator turns F' = W' F into a graded recurrence).
  TruncatedSeries exp_no_constant() const {
    if (constant_term() != 0) throw DomainError("exp_no_constant: series has a constant term");
    const auto w = graded();
    std::vector<Polynomial> f(w.size(), Polynomial(arity()));
    f[0] = Polynomial::constant(arity(), Rational(1));
    for (std::size_t n = 1; n < w.size(); ++n) {
      Polynomial acc(arity());
      for (std::size_t k = 1; k <= n; ++k)
        if (!w[k].is_zero() && !f[n - k].is_zero()) acc += (w[k] * f[n - k]) * Rational(static_cast<long>(k));
      f[n] = acc * Rational(1, static_cast<long>(n));
    }
    Polynomial out(arity());
    for (auto& p : f) out += p;
    return {out, order_, exp_scale_};
  }

  /// (1 + u)^a for u without constant term: n F_n = sum_k (a k - (n-k)) U_k F_{n-k}.
  TruncatedSeries one_plus_pow(const Rational& a) const {
    if (constant_term() != 0) throw DomainError("one_plus_pow: series has a constant term");
    const auto u = graded();
    std::vector<Polynomial> f(u.size(), Polynomial(arity()));
    f[0] = Polynomial::constant(arity(), Rational(1));
    for (std::size_t n = 1; n < u.size(); ++n) {
      Polynomial acc(arity());
      for (std::size_t k = 1; k <= n; ++k) {
        if (u[k].is_zero() || f[n - k].is_zero()) continue;
        const Rational w = a * static_cast<long>(k) - static_cast<long>(n - k);
        if (w != 0) acc += (u[k] * f[n - k]) * w;
      }
      f[n] = acc * Rational(1, static_cast<long>(n));
    }
    Polynomial out(arity());
    for (auto& p : f) out += p;
    return {out, order_, exp_scale_ * a};
  }

  /// Multiplicative inverse; needs a unit constant term.
  TruncatedSeries inverse() const {
    const Rational c = constant_term();
    if (c == 0) throw PoleAtOriginError("series inverse needs a nonzero constant term");
    TruncatedSeries u{(poly_ - Polynomial::constant(arity(), c)) * Rational(1 / c), order_};
    TruncatedSeries r = u.one_plus_pow(Rational(-1)) * Rational(1 / c);
    return {r.poly_, order_, Rational(-exp_scale_)};
  }

  /// Rows (k, numerator, denominator) for univariate series.
  std::string to_csv() const {
    std::string out = "k,numerator,denominator\n";
    for (int k = 0; k <= order_; ++k) {
      const Rational c = coefficient(k);
      out += std::to_string(k) + "," + c.get_num().get_str() + "," + c.get_den().get_str() + "\n";
    }
    return out;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.order_ == b.order_ && a.exp_scale_ == b.exp_scale_ && a.poly_ == b.poly_;
  }

private:
  static Rational common_scale(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.is_zero()) return b.exp_scale_;
    if (b.is_zero()) return a.exp_scale_;
    if (a.exp_scale_ != b.exp_scale_) throw InconclusiveError("sum of series with different exponential factors");
    return a.exp_scale_;
  }

  Polynomial poly_;
  int order_;
  Rational exp_scale_;
};

/// log|q| in double precision without overflow.
inline double log_abs(const Rational& q) {
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

struct RadiusEstimate {
  double radius = 0;
  bool divergent = false;
  int window_first = 0; // degrees of the tail window
  int window_last = 0;
};

/// Cauchy-Hadamard surrogate 1 / max_k |a_k|^(1/k) over the last half of
/// the nonzero coefficients (at least four). An estimate, not a bound.
inline RadiusEstimate radius_estimate(const TruncatedSeries& s) {
  if (s.arity() != 1) throw DimensionError("radius_estimate needs a univariate series");
  std::vector<int> nz;
  for (int k = 1; k <= s.order(); ++k)
    if (s.coefficient(k) != 0) nz.push_back(k);
  if (nz.size() < 8) throw InconclusiveError("fewer than 8 nonzero coefficients");
  const std::size_t take = std::max<std::size_t>(4, nz.size() / 2);
  const std::size_t start = nz.size() - take;
  const double c = s.exp_scale().get_d();
  std::vector<double> r;
  for (std::size_t i = start; i < nz.size(); ++i) {
    const int k = nz[i];
    r.push_back(std::exp((log_abs(s.coefficient(k)) + c) / k));
  }
  // slope of log|a_k| against k over the window; a constant prefactor drops out
  double sk = 0, sl = 0, skk = 0, skl = 0;
  for (std::size_t i = start; i < nz.size(); ++i) {
    const double k = nz[i], l = log_abs(s.coefficient(nz[i]));
    sk += k, sl += l, skk += k * k, skl += k * l;
  }
  const double n = static_cast<double>(take);
  const double slope = (n * skl - sk * sl) / (n * skk - sk * sk);
  RadiusEstimate e;
  e.radius = std::exp(-slope);
  e.divergent = r.back() / r.front() >= 1.5;
  e.window_first = nz[start];
  e.window_last = nz.back();
  return e;
}

} // namespace analytica
