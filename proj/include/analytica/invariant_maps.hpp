#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "analytica/error.hpp"
#include "analytica/expression.hpp"
#include "analytica/interval.hpp"
#include "analytica/polynomial.hpp"
#include "analytica/series_engine.hpp"

namespace analytica {

struct InvariantMapSpec {
  enum class Kind { QMap, SigmaMap };
  Kind kind = Kind::QMap;
  int param = 2; // n for QMap, d for SigmaMap

  static InvariantMapSpec q_map(int n) { return {Kind::QMap, n}; }
  static InvariantMapSpec sigma_map(int d) { return {Kind::SigmaMap, d}; }

  std::string name() const {
    return kind == Kind::QMap ? "q(n=" + std::to_string(param) + ")" : "sigma(d=" + std::to_string(param) + ")";
  }
  /// Generators of the group the map is invariant under.
  std::string group() const {
    return kind == Kind::QMap ? "sign flips Z_2^" + std::to_string(param)
                              : "dihedral of order " + std::to_string(2 * param) + ": rotation 2pi/" +
                                    std::to_string(param) + ", reflection (x,-y)";
  }
};

/// sum_k binom(d, 2k) (-1)^k x^(d-2k) y^(2k) = Re (x + iy)^d.
inline Polynomial sigma2(int d) {
  Polynomial p(2);
  Integer binom = 1;
  for (int j = 0; j <= d; ++j) {
    if (j % 2 == 0) p.add_term({d - j, j}, Rational((j / 2) % 2 == 0 ? binom : Integer(-binom)));
    binom = binom * (d - j) / (j + 1);
  }
  return p;
}

inline PolynomialMap build_map(const InvariantMapSpec& spec) {
  if (spec.kind == InvariantMapSpec::Kind::QMap) {
    if (spec.param < 1) throw DomainError("QMap needs n >= 1");
    const std::size_t n = static_cast<std::size_t>(spec.param);
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(Polynomial::variable(n, i).pow(2));
    return {n, std::move(c)};
  }
  if (spec.param < 3) throw DomainError("SigmaMap needs d >= 3");
  const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  return {2, {x * x + y * y, sigma2(spec.param)}};
}

// --- circle to segment -------------------------------------------------------

struct CircleSample {
  double theta, x, y;
};

struct CircleReport {
  int d = 3;
  Rational r{1};
  int samples = 0;
  double max_first_deviation = 0; // sup |sigma_1 - r^2| over the enclosures
  double max_abs_second = 0;      // sup |sigma_2|
  double max_attained = 0;        // inf of the largest |sigma_2| enclosure
  double min_second = 0, max_second = 0;
  double bound = 0;               // r^d
  std::vector<CircleSample> rows;

  bool first_ok(double tol) const { return max_first_deviation <= tol; }
  bool bound_ok(double tol) const { return max_abs_second <= bound + tol; }
  bool attained_ok(double tol) const { return max_attained >= bound - tol; }
};

/// sigma(r cos t, r sin t) for t = 2 pi j / N, evaluated in interval arithmetic.
inline CircleReport verify_circle_to_segment(int d, const Rational& r, int samples) {
  if (r <= 0) throw DomainError("circle radius must be positive");
  if (samples < 1) throw DomainError("need at least one angle sample");
  const PolynomialMap sigma = build_map(InvariantMapSpec::sigma_map(d));
  const mpfr_prec_t prec = default_precision();
  CircleReport rep;
  rep.d = d;
  rep.r = r;
  rep.samples = samples;
  const Interval two_pi = Interval::pi(prec) * Interval(Rational(2), prec);
  const Interval rr(r, prec);
  const Interval r2(Rational(r * r), prec);
  rep.bound = pow(r, static_cast<unsigned>(d)).get_d();
  rep.min_second = INFINITY;
  rep.max_second = -INFINITY;
  for (int j = 0; j < samples; ++j) {
    const Interval theta = two_pi * Interval(Rational(j, samples), prec);
    const Interval pt[2] = {rr * cos(theta), rr * sin(theta)};
    const auto img = sigma.evaluate(std::span<const Interval>(pt, 2));
    const Interval dev = img[0] - r2;
    rep.max_first_deviation = std::max(rep.max_first_deviation, dev.magnitude().to_double());
    rep.max_abs_second = std::max(rep.max_abs_second, img[1].magnitude().to_double());
    // certified lower bound of |sigma_2|
    const double low = img[1].certainly_positive() ? img[1].lo().to_double()
                       : img[1].certainly_negative() ? -img[1].hi().to_double() : 0.0;
    rep.max_attained = std::max(rep.max_attained, low);
    rep.min_second = std::min(rep.min_second, img[1].mid());
    rep.max_second = std::max(rep.max_second, img[1].mid());
    rep.rows.push_back({theta.mid(), img[0].mid(), img[1].mid()});
  }
  return rep;
}

// --- group invariance ---------------------------------------------------------

struct GroupInvarianceReport {
  bool exact_ok = true;           // sign flips / reflection as polynomial identities
  bool rotation_exact = false;    // rotation checked as a polynomial identity (d = 4)
  double rotation_max_error = 0;  // numeric check otherwise
  int trials = 0;
  bool passed(double tol = 1e-12) const { return exact_ok && (rotation_exact || rotation_max_error <= tol); }
};

inline GroupInvarianceReport check_group_invariance(const InvariantMapSpec& spec, int trials = 20, std::uint64_t seed = 1) {
  const PolynomialMap f = build_map(spec);
  GroupInvarianceReport rep;
  rep.trials = trials;
  const std::size_t n = f.source_dim();
  if (spec.kind == InvariantMapSpec::Kind::QMap) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      std::vector<RationalVector> g(n, RationalVector(n, Rational(0)));
      for (std::size_t i = 0; i < n; ++i) g[i][i] = (mask >> i) & 1 ? -1 : 1;
      if (!(compose_polymaps(f, PolynomialMap::affine(g, RationalVector(n, Rational(0)))) == f)) rep.exact_ok = false;
    }
    rep.rotation_exact = true;
    return rep;
  }
  const int d = spec.param;
  const RationalVector zero2(2, Rational(0));
  const PolynomialMap reflect = PolynomialMap::affine({{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}}, zero2);
  rep.exact_ok = compose_polymaps(f, reflect) == f;
  if (d == 4) {
    const PolynomialMap quarter = PolynomialMap::affine({{Rational(0), Rational(-1)}, {Rational(1), Rational(0)}}, zero2);
    rep.rotation_exact = compose_polymaps(f, quarter) == f;
    return rep;
  }
  const mpfr_prec_t prec = default_precision();
  const Interval angle = Interval::pi(prec) * Interval(Rational(2, d), prec);
  const Interval c = cos(angle), s = sin(angle);
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Rational x = rng.rational_in(-1, 1), y = rng.rational_in(-1, 1);
    const Interval p[2] = {Interval(x, prec), Interval(y, prec)};
    const Interval q[2] = {c * p[0] - s * p[1], s * p[0] + c * p[1]};
    const auto a = f.evaluate(std::span<const Interval>(p, 2));
    const auto b = f.evaluate(std::span<const Interval>(q, 2));
    for (int i = 0; i < 2; ++i) rep.rotation_max_error = std::max(rep.rotation_max_error, (a[i] - b[i]).magnitude().to_double());
  }
  return rep;
}

// --- factorization through the invariants ---------------------------------------

struct FactorizationReport {
  std::string map;
  int K = 0;
  bool support_ok = false;     // QMap: all exponents even; SigmaMap: remainder zero
  bool residual_zero = false;  // recovered factor equals the Taylor series of g
  Polynomial composite;        // series of g o map to order K
  Polynomial recovered;        // F in the invariant coordinates
  Polynomial remainder;        // SigmaMap: part not in the sigma-algebra
  Polynomial residual;         // recovered - T g (truncated)
  std::string note;
};

namespace detail {

/// Solves A c = b over Q by Gauss-Jordan; rows beyond the rank are used to
/// detect inconsistency. Returns c and sets consistent.
inline RationalVector solve_linear(std::vector<RationalVector> a, RationalVector b, bool& consistent) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  consistent = true;
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) consistent = false;
  RationalVector x(cols, Rational(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
  return x;
}

} // namespace detail

/// Series of g o (invariant map) to order K, its support test, and the factor
/// F with F o map = T(g o map) recovered exactly.
inline FactorizationReport invariant_factorization_check(const Expression& g, const InvariantMapSpec& spec, int K) {
  const PolynomialMap f = build_map(spec);
  const std::size_t n = f.target_dim();
  if (g.arity() > n) throw DimensionError("test function has more variables than the invariant map");
  FactorizationReport rep;
  rep.map = spec.name();
  rep.K = K;
  const CompositeGerm cg = taylor_of_composite(g, f, K);
  if (!std::holds_alternative<TruncatedSeries>(cg)) throw UnsupportedError("test function is flat along the map");
  rep.composite = std::get<TruncatedSeries>(cg).polynomial();
  if (std::get<TruncatedSeries>(cg).exp_scale() != 0) throw UnsupportedError("test function carries an exponential factor");
  rep.recovered = Polynomial(n);
  rep.remainder = Polynomial(f.source_dim());

  if (spec.kind == InvariantMapSpec::Kind::QMap) {
    rep.support_ok = true;
    for (const auto& [e, c] : rep.composite.terms()) {
      Exponents half(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] % 2 != 0) rep.support_ok = false;
        half[i] = e[i] / 2;
      }
      if (rep.support_ok) rep.recovered.add_term(half, c);
    }
    const CompositeGerm tg = taylor_of_composite(g, PolynomialMap::identity(n), K / 2);
    rep.residual = rep.recovered - std::get<TruncatedSeries>(tg).polynomial();
    rep.residual_zero = rep.support_ok && rep.residual.is_zero();
    return rep;
  }

  // sigma: each graded part of degree D is a combination of
  // sigma_1^a sigma_2^b with 2a + d b = D, higher b first
  const int d = spec.param;
  const Polynomial s1 = f[0], s2 = f[1];
  std::vector<Polynomial> graded(static_cast<std::size_t>(K) + 1, Polynomial(2));
  for (const auto& [e, c] : rep.composite.terms()) graded[static_cast<std::size_t>(e[0] + e[1])].add_term(e, c);
  for (int D = 0; D <= K; ++D) {
    std::vector<std::pair<int, int>> cols;
    for (int b = D / d; b >= 0; --b)
      if ((D - d * b) % 2 == 0) cols.emplace_back((D - d * b) / 2, b);
    const Polynomial& target = graded[static_cast<std::size_t>(D)];
    if (cols.empty()) {
      rep.remainder += target;
      continue;
    }
    std::vector<Polynomial> basis;
    for (const auto& [a, b] : cols) basis.push_back(s1.pow(static_cast<unsigned>(a)) * s2.pow(static_cast<unsigned>(b)));
    std::vector<RationalVector> A(static_cast<std::size_t>(D) + 1, RationalVector(cols.size(), Rational(0)));
    RationalVector rhs(static_cast<std::size_t>(D) + 1, Rational(0));
    for (int i = 0; i <= D; ++i) {
      const Exponents e{D - i, i};
      for (std::size_t j = 0; j < cols.size(); ++j) A[static_cast<std::size_t>(i)][j] = basis[j].coefficient(e);
      rhs[static_cast<std::size_t>(i)] = target.coefficient(e);
    }
    bool consistent = false;
    const RationalVector c = detail::solve_linear(A, rhs, consistent);
    Polynomial fit(2);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (c[j] == 0) continue;
      rep.recovered.add_term({cols[j].first, cols[j].second}, c[j]);
      fit += basis[j] * c[j];
    }
    rep.remainder += target - fit;
  }
  rep.support_ok = rep.remainder.is_zero();
  // compare with T g on the weights 2a + d b <= K
  const int plain = K / 2;
  const CompositeGerm tg = taylor_of_composite(g, PolynomialMap::identity(n), plain);
  Polynomial tgw(n);
  for (const auto& [e, c] : std::get<TruncatedSeries>(tg).polynomial().terms())
    if (2 * e[0] + d * (e.size() > 1 ? e[1] : 0) <= K) tgw.add_term(e, c);
  rep.residual = rep.recovered - tgw;
  rep.residual_zero = rep.support_ok && rep.residual.is_zero();
  rep.note = "reconstructed sigma-algebra support test: graded linear reduction in sigma_1^a sigma_2^b, higher sigma_2 power first";
  return rep;
}

} // namespace analytica
