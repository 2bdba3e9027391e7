#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "analytica/error.hpp"
#include "analytica/interval.hpp"
#include "analytica/invariant_maps.hpp"
#include "analytica/polynomial.hpp"
#include "analytica/rank.hpp"
#include "analytica/set_catalog.hpp"

namespace analytica {

/// Raw data of the UPC condition at a boundary point x: h(0) = x, the set
/// keeps distance >= M t^m from h(t) for t in [0, 1], and a basis whose
/// first vector points along the leading direction of h - x. Basis vectors
/// are rational, not unit length; |v_i|^2 <= 1 is required for i >= 2.
struct UPCWitness {
  RationalVector x;
  PolynomialMap h;
  int m = 1;
  Rational M{1};
  std::vector<RationalVector> basis;

  std::size_t dimension() const { return x.size(); }
};

inline Rational squared_norm(const RationalVector& v) {
  Rational s(0);
  for (const auto& c : v) s += c * c;
  return s;
}

/// Exact determinant by Gaussian elimination over Q.
inline Rational determinant(std::vector<RationalVector> a) {
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Leading coefficient vector h~(0) of h(t) - x = t^p h~(t), and p.
inline std::pair<RationalVector, int> leading_direction(const UPCWitness& w) {
  int p = -1;
  for (std::size_t i = 0; i < w.h.target_dim(); ++i) {
    const Polynomial d = w.h[i] - Polynomial::constant(1, w.x[i]);
    if (!d.is_zero() && (p < 0 || d.order() < p)) p = d.order();
  }
  if (p < 0) throw DegenerateWitnessError("h is constant");
  RationalVector lead;
  for (std::size_t i = 0; i < w.h.target_dim(); ++i) lead.push_back(w.h[i].coefficient({p}));
  return {lead, p};
}

/// Checks the witness invariants; throws DegenerateWitnessError.
inline void validate(const UPCWitness& w) {
  const std::size_t n = w.dimension();
  if (n < 2) throw DegenerateWitnessError("witness dimension must be >= 2");
  if (w.h.source_dim() != 1 || w.h.target_dim() != n) throw DegenerateWitnessError("h must map R -> R^n");
  if (w.m < 1 || w.M <= 0) throw DegenerateWitnessError("need m >= 1 and M > 0");
  const Rational zero[1] = {Rational(0)};
  if (w.h.evaluate(std::span<const Rational>(zero, 1)) != w.x) throw DegenerateWitnessError("h(0) != x");
  if (w.basis.size() != n) throw DegenerateWitnessError("basis must have n vectors");
  for (const auto& v : w.basis)
    if (v.size() != n) throw DegenerateWitnessError("basis vector has wrong dimension");
  if (determinant(w.basis) == 0) throw DegenerateWitnessError("basis is linearly dependent");
  for (std::size_t i = 1; i < n; ++i)
    if (squared_norm(w.basis[i]) > 1) throw DegenerateWitnessError("|v_" + std::to_string(i + 1) + "| > 1");
  const auto [lead, p] = leading_direction(w);
  // v_1 = lambda h~(0) with lambda > 0
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < n; ++i) {
    if (lead[i] == 0) {
      if (w.basis[0][i] != 0) throw DegenerateWitnessError("v_1 is not parallel to h~(0)");
      continue;
    }
    const Rational l = w.basis[0][i] / lead[i];
    if (lambda && *lambda != l) throw DegenerateWitnessError("v_1 is not parallel to h~(0)");
    lambda = l;
  }
  if (!lambda || *lambda <= 0) throw DegenerateWitnessError("v_1 must be a positive multiple of h~(0)");
}

/// theta(s) = h(s_1) + s_2^m v_2 + ... + s_n^m v_n.
inline PolynomialMap build_theta(const UPCWitness& w) {
  validate(w);
  const std::size_t n = w.dimension();
  const Polynomial s1 = Polynomial::variable(n, 0);
  std::vector<Polynomial> comps;
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial c = w.h[j].compose({s1});
    for (std::size_t i = 1; i < n; ++i)
      if (w.basis[i][j] != 0) c += Polynomial::variable(n, i).pow(static_cast<unsigned>(w.m)) * w.basis[i][j];
    comps.push_back(std::move(c));
  }
  return {n, std::move(comps)};
}

/// C = {0 <= s_1 <= 1, |s_i| <= rho s_1} with rho^m = M / (2(n-1)) kept exact.
struct ConeC {
  std::size_t n = 2;
  int m = 1;
  Rational rho_pow_m{1};

  static ConeC from(const UPCWitness& w) {
    const std::size_t n = w.dimension();
    return {n, w.m, Rational(w.M / (2 * static_cast<long>(n - 1)))};
  }

  Interval rho(mpfr_prec_t prec = default_precision()) const { return root(Interval(rho_pow_m, prec), static_cast<unsigned long>(m)); }

  /// Rational lower bound for rho, checked exactly: lower^m <= rho^m.
  Rational rho_lower() const {
    if (auto e = exact_root(rho_pow_m, static_cast<unsigned>(m))) return *e;
    Rational lo = rho().lo().to_rational();
    while (pow(lo, static_cast<unsigned>(m)) > rho_pow_m) lo *= Rational(999, 1000);
    return lo;
  }

  /// Membership with |s_i| <= rho s_1 decided as |s_i|^m <= rho^m s_1^m.
  bool contains(std::span<const Rational> s) const {
    if (s.size() != n) throw DimensionError("cone point has wrong dimension");
    if (s[0] < 0 || s[0] > 1) return false;
    const Rational bound = rho_pow_m * pow(s[0], static_cast<unsigned>(m));
    for (std::size_t i = 1; i < n; ++i)
      if (pow(Rational(abs(s[i])), static_cast<unsigned>(m)) > bound) return false;
    return true;
  }
};

/// l(y) = (sum y, rho (y_2 - sum y / n), ..., rho (y_n - sum y / n)),
/// written as s_1 = sum y and s_i = rho L_i(y) with L rational.
struct SimplexToCone {
  ConeC cone;
  std::vector<RationalVector> L; // rows: sum y, then L_i for i >= 2 (without rho)
  bool vertex_certificate = false;
  std::vector<std::string> vertex_trace;
  Rational det_without_rho{0}; // det l = rho^(n-1) * det_without_rho

  /// Image of a vertex of the standard simplex, in (s_1, c_i) with s_i = rho c_i.
  RationalVector image(std::span<const Rational> y) const {
    RationalVector out;
    for (const auto& row : L) {
      Rational s(0);
      for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * y[j];
      out.push_back(s);
    }
    return out;
  }
};

inline SimplexToCone build_simplex_to_cone(const ConeC& cone) {
  if (cone.rho_pow_m <= 0) throw DomainError("rho must be positive");
  const std::size_t n = cone.n;
  SimplexToCone l;
  l.cone = cone;
  l.L.push_back(RationalVector(n, Rational(1)));
  for (std::size_t i = 1; i < n; ++i) {
    RationalVector row(n, Rational(-1, static_cast<long>(n)));
    row[i] += 1;
    l.L.push_back(std::move(row));
  }
  l.det_without_rho = determinant(l.L);
  // vertices 0, e_1, ..., e_n of the simplex; rho cancels in |rho c_i| <= rho s_1
  l.vertex_certificate = l.det_without_rho != 0;
  for (std::size_t k = 0; k <= n; ++k) {
    RationalVector y(n, Rational(0));
    if (k > 0) y[k - 1] = 1;
    const RationalVector img = l.image(y);
    bool ok = img[0] >= 0 && img[0] <= 1;
    for (std::size_t i = 1; i < n; ++i)
      ok = ok && pow(Rational(abs(img[i])), static_cast<unsigned>(cone.m)) <= pow(img[0], static_cast<unsigned>(cone.m));
    l.vertex_trace.push_back("vertex " + std::to_string(k) + ": s_1 = " + img[0].get_str() + (ok ? " in C" : " NOT in C"));
    l.vertex_certificate = l.vertex_certificate && ok;
  }
  return l;
}

struct PsiResult {
  PolynomialMap psi;
  PolynomialMap theta;
  SimplexToCone ell;
  int degree = 0;
  InjectivityVerdict injectivity;
};

/// psi = theta o l o q. theta only sees s_i through s_i^m, so
/// (rho L_i)^m = rho^m L_i^m keeps every coefficient rational.
inline PsiResult build_psi(const UPCWitness& w, int rank_trials = kDefaultRankTrials, std::uint64_t seed = 1) {
  const PolynomialMap theta = build_theta(w);
  const std::size_t n = w.dimension();
  const ConeC cone = ConeC::from(w);
  SimplexToCone ell = build_simplex_to_cone(cone);
  const PolynomialMap q = build_map(InvariantMapSpec::q_map(static_cast<int>(n)));
  // (s_1, c_2, ..., c_n) = L(q(s)) with rational coefficients
  std::vector<Polynomial> lin;
  for (const auto& row : ell.L) {
    Polynomial p(n);
    for (std::size_t j = 0; j < n; ++j) p += q[j] * row[j];
    lin.push_back(std::move(p));
  }
  const Polynomial s1 = lin[0];
  std::vector<Polynomial> comps;
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial c = w.h[j].compose({s1});
    for (std::size_t i = 1; i < n; ++i)
      if (w.basis[i][j] != 0) c += lin[i].pow(static_cast<unsigned>(w.m)) * Rational(cone.rho_pow_m * w.basis[i][j]);
    comps.push_back(std::move(c));
  }
  PolynomialMap psi(n, std::move(comps));
  const int deg = psi.degree();
  InjectivityVerdict inj = strong_injectivity_verdict(psi, rank_trials, seed, "psi");
  return {std::move(psi), theta, std::move(ell), deg, std::move(inj)};
}

struct ChainViolation {
  RationalVector s;
  std::string kind; // "membership" or "margin"
};

struct DistanceChainReport {
  std::size_t samples = 0;
  std::size_t membership_violations = 0;
  std::size_t margin_violations = 0;
  std::size_t indeterminate = 0;
  std::size_t boundary_samples = 0;
  double min_ratio = 0; // min slack / (kappa (M/2) s_1^m) over s_1 > 0
  Rational kappa{1};
  std::vector<ChainViolation> violations; // first few

  bool clean() const { return membership_violations == 0 && margin_violations == 0 && indeterminate == 0; }
};

/// Samples s in C (with a rational lower bound for rho), checks theta(s) in
/// X and constraint_slack(X, theta(s)) >= kappa (M/2) s_1^m exactly.
inline DistanceChainReport verify_distance_chain(const UPCWitness& w, const CuspidalSet& set, std::size_t samples,
                                                 std::uint64_t seed) {
  const PolynomialMap theta = build_theta(w);
  const ConeC cone = ConeC::from(w);
  const Rational rho = cone.rho_lower();
  const std::size_t n = w.dimension();
  DistanceChainReport rep;
  rep.kappa = set.slack_factor();
  rep.min_ratio = INFINITY;
  Rng rng(seed);
  const unsigned m = static_cast<unsigned>(w.m);
  for (std::size_t k = 0; k < samples; ++k) {
    RationalVector s(n);
    // the first samples pin the apex, the top face and the cone boundary
    const std::size_t kind = k < 8 ? k : 8;
    switch (kind) {
      case 0: s[0] = 0; break;
      case 1: s[0] = 1; break;
      default: s[0] = kind < 8 ? Rational(static_cast<long>(kind), 8) : rng.rational_in(0, 1);
    }
    for (std::size_t i = 1; i < n; ++i) {
      Rational u = kind == 0 ? Rational(0) : kind < 8 ? Rational((kind + i) % 2 == 0 ? 1 : -1) : rng.rational_in(-1, 1);
      s[i] = rho * s[0] * u;
    }
    if (kind < 8) ++rep.boundary_samples;
    ++rep.samples;
    if (!cone.contains(s)) throw Error("sampler left the cone");
    const RationalVector pt = theta.evaluate(std::span<const Rational>(s));
    const Membership mem = classify(set, pt);
    if (mem == Membership::Indeterminate) {
      ++rep.indeterminate;
      continue;
    }
    if (mem == Membership::Outside) {
      ++rep.membership_violations;
      if (rep.violations.size() < 10) rep.violations.push_back({s, "membership"});
      continue;
    }
    const Rational slack = constraint_slack(set, pt);
    const Rational predicted = rep.kappa * w.M / 2 * pow(s[0], m);
    if (slack < predicted) {
      ++rep.margin_violations;
      if (rep.violations.size() < 10) rep.violations.push_back({s, "margin"});
    }
    if (predicted > 0) rep.min_ratio = std::min(rep.min_ratio, Rational(slack / predicted).get_d());
  }
  return rep;
}

struct Theta2D {
  PolynomialMap theta;
  CuspidalSet cusp; // S in (s_2, s_1) coordinate order: |s_2| <= (M/2) s_1^m
  std::size_t samples = 0;
  std::size_t outside = 0;
};

/// Theta(s_1, s_2) = h(s_1) + s_2 v_2 and the cusp S, with a sampled check
/// that Theta(S) lies in X (points mapping to x itself included).
inline Theta2D build_theta_2d(const UPCWitness& w, const CuspidalSet& set, std::size_t samples = 200,
                              std::uint64_t seed = 1) {
  validate(w);
  if (w.dimension() != 2) throw DimensionError("build_theta_2d needs a planar witness");
  const Polynomial s1 = Polynomial::variable(2, 0), s2 = Polynomial::variable(2, 1);
  std::vector<Polynomial> comps;
  for (std::size_t j = 0; j < 2; ++j) comps.push_back(w.h[j].compose({s1}) + s2 * w.basis[1][j]);
  Theta2D out{PolynomialMap(2, std::move(comps)),
              CuspidalSet::truncated_cusp(Rational(1, w.m), Rational(w.M / 2), Rational(1), 2), 0, 0};
  Rng rng(seed);
  const Rational half_M = w.M / 2;
  for (std::size_t k = 0; k < samples; ++k) {
    const Rational a = k == 0 ? Rational(0) : rng.rational_in(0, 1);
    const Rational lim = half_M * pow(a, static_cast<unsigned>(w.m));
    const Rational b = k % 3 == 1 ? lim : k % 3 == 2 ? Rational(-lim) : rng.rational_in(-lim, lim);
    const RationalVector sp{b, a}; // (s_2, s_1) order of the cusp descriptor
    if (!contains(out.cusp, std::span<const Rational>(sp))) throw Error("sample left the cusp S");
    const RationalVector st{a, b};
    const RationalVector pt = out.theta.evaluate(std::span<const Rational>(st));
    ++out.samples;
    if (classify(set, pt) != Membership::Inside) ++out.outside;
  }
  return out;
}

struct ShippedWitness {
  std::string name;
  CuspidalSet set;
  UPCWitness witness;
};

/// Witnesses shipped for the catalog. Curves are scaled so the margin holds
/// on all of [0, 1]: the cusp apex curve runs at half height, the horn curve
/// follows (t/2, 3 (t/2)^D / 2).
inline std::vector<ShippedWitness> shipped_witnesses() {
  std::vector<ShippedWitness> out;
  const RationalVector origin{Rational(0), Rational(0)};
  for (int m = 1; m <= 3; ++m) {
    CuspidalSet set = CuspidalSet::holder_cusp(m);
    UPCWitness w{origin,
                 PolynomialMap(1, {Polynomial(1), Polynomial::monomial({1}, Rational(1, 2))}),
                 m,
                 set.declared_chars().front().M,
                 {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    out.push_back({"holder-cusp-m" + std::to_string(m), std::move(set), std::move(w)});
  }
  for (int D = 1; D <= 2; ++D) {
    CuspidalSet set = CuspidalSet::horn(D);
    Rational c(3, Integer(1) << static_cast<unsigned>(D + 1));
    c.canonicalize();
    PolynomialMap h(1, {Polynomial::monomial({1}, Rational(1, 2)), Polynomial::monomial({D}, c)});
    UPCWitness w{origin, h, D, set.declared_chars().front().M, {}};
    w.basis = {leading_direction(w).first, {Rational(0), Rational(1)}};
    out.push_back({"horn-D" + std::to_string(D), std::move(set), std::move(w)});
  }
  {
    CuspidalSet set = CuspidalSet::standard_simplex(2);
    PolynomialMap h(1, {Polynomial::monomial({1}, Rational(1, 4)), Polynomial::monomial({1}, Rational(1, 4))});
    UPCWitness w{origin, h, 1, set.declared_chars().front().M,
                 {{Rational(1, 4), Rational(1, 4)}, {Rational(1), Rational(0)}}};
    out.push_back({"simplex-2", std::move(set), std::move(w)});
  }
  return out;
}

} // namespace analytica
