#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "analytica/error.hpp"
#include "analytica/interval.hpp"
#include "analytica/polynomial.hpp"
#include "analytica/quadratic_surd.hpp"
#include "analytica/rational.hpp"

namespace analytica {

/// Exponent marker for sqrt(2); kept symbolic, never rounded.
struct Sqrt2 {
  friend bool operator==(Sqrt2, Sqrt2) { return true; }
};
using CuspExponent = std::variant<Rational, Sqrt2>;

/// (m, D) with margin M: curves of degree <= D staying M t^m inside the set.
struct UPCCharacteristic {
  int m = 1;
  int D = 1;
  Rational M{1};

  friend bool operator==(const UPCCharacteristic&, const UPCCharacteristic&) = default;
};

// --- set kinds ------------------------------------------------------------

/// Closure of { |x'| < r, (|x'|/r)^alpha < x_n/h < 1 } in R^n.
struct TruncatedCusp {
  CuspExponent alpha;
  Rational r{1};
  Rational h{1};
  std::size_t n = 2;
};
/// { 0 <= x <= 1, x^D <= y <= 2 x^D }.
struct Horn {
  int D = 1;
};
/// { x_i >= 0 }.
struct Orthant {
  std::size_t n = 2;
};
/// Convex hull of n+1 affinely independent points.
struct Simplex {
  std::vector<RationalVector> vertices;
};
/// { x >= 0, x^sqrt2 <= y <= x^sqrt2 + x^2 }.
struct IrrationalCusp {};
/// { x^3 = y^2 }.
struct CuspCurve {};
/// { x >= 0, |y| <= x^(d/2) }, the image of the dihedral invariants.
struct DihedralRegion {
  int d = 3;
};
/// { normal . x <= offset }.
struct HalfSpace {
  RationalVector normal;
  Rational offset{0};
};
class CuspidalSet;
/// Finite union of catalog sets of one dimension.
struct SetUnion {
  std::vector<CuspidalSet> members;
};

using SetKind = std::variant<TruncatedCusp, Horn, Orthant, Simplex, IrrationalCusp, CuspCurve, DihedralRegion,
                             HalfSpace, SetUnion>;

// --- constraints ----------------------------------------------------------

enum class Relation { NonNegative, Zero };

/// scale * base(x)^exponent with base(x) >= 0 on the evaluation domain.
struct PowerTerm {
  Polynomial base;
  SurdRational exponent;
  Rational scale{1};
};

/// value(x) = poly(x) + sum of power terms; required >= 0 or == 0.
struct Constraint {
  std::string label;
  Relation relation = Relation::NonNegative;
  Polynomial poly;
  std::vector<PowerTerm> powers;

  bool is_polynomial() const { return powers.empty(); }
};

/// Value of a constraint: exact when every piece is rational, otherwise a
/// certified enclosure.
struct ConstraintValue {
  std::optional<Rational> exact;
  std::optional<Interval> enclosure;

  /// -1, 0, +1 when decided; nullopt when the enclosure straddles 0.
  std::optional<int> sign() const {
    if (exact) return sgn(*exact);
    if (enclosure->certainly_positive()) return 1;
    if (enclosure->certainly_negative()) return -1;
    return std::nullopt;
  }

  /// Certified lower bound as an exact (dyadic) rational.
  Rational lower_bound() const { return exact ? *exact : enclosure->lo().to_rational(); }
};

namespace detail {

inline Interval power_enclosure(const Rational& base, const SurdRational& exponent, mpfr_prec_t prec) {
  if (exponent.is_rational()) return pow(Interval(base, prec), exponent.a);
  return pow(Interval(base, prec), enclose(exponent, prec));
}

inline std::optional<Rational> exact_power(const Rational& base, const SurdRational& exponent) {
  if (base < 0) throw DomainError("power term evaluated at a negative base");
  if (exponent.is_rational()) return exact_rational_power(base, exponent.a);
  if (base == 0) return Rational(0);
  if (base == 1) return Rational(1);
  return std::nullopt; // base^irrational is transcendental for other rational bases
}

} // namespace detail

inline ConstraintValue evaluate(const Constraint& c, std::span<const Rational> point,
                                mpfr_prec_t prec = default_precision()) {
  Rational exact_sum = c.poly.evaluate(point);
  std::optional<Interval> enclosure;
  for (const auto& term : c.powers) {
    const Rational base = term.base.evaluate(point);
    if (auto v = detail::exact_power(base, term.exponent)) {
      exact_sum += term.scale * *v;
    } else {
      Interval piece = Interval(term.scale, prec) * detail::power_enclosure(base, term.exponent, prec);
      enclosure = enclosure ? *enclosure + piece : piece;
    }
  }
  if (!enclosure) return {exact_sum, std::nullopt};
  return {std::nullopt, Interval(exact_sum, prec) + *enclosure};
}

enum class Membership { Inside, Outside, Indeterminate };

inline std::string to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "in";
    case Membership::Outside: return "out";
    case Membership::Indeterminate: return "boundary-enclosure";
  }
  return "?";
}

// --- the set value type ---------------------------------------------------

class CuspidalSet {
public:
  CuspidalSet(SetKind kind, std::vector<UPCCharacteristic> chars, bool simple = true)
      : kind_(std::move(kind)), chars_(std::move(chars)), simple_(simple) {
    for (const auto& ch : chars_)
      if (ch.m < 1 || ch.D < 1 || ch.M <= 0) throw DomainError("characteristic needs m, D >= 1 and M > 0");
    validate();
  }

  // Catalog factories. Declared characteristics come with a margin M that
  // was derived for the shipped witness curves (see upc.hpp).

  static CuspidalSet horn(int D) {
    if (D < 1) throw DomainError("horn degree must be positive");
    // h(t) = (t/2, 3 t^D / 2^(D+1)) keeps distance >= t^D / (2^(D+1) (2D+1)).
    Rational M(1, Integer(2) * (Integer(1) << static_cast<unsigned>(D)) * (2 * D + 1));
    M.canonicalize();
    return {Horn{D}, {{D, D, M}}};
  }

  static CuspidalSet orthant(std::size_t n) { return {Orthant{n}, {{1, 1, Rational(1)}}}; }

  /// Closure of the 1/m-cusp in R^n; characteristic (m, 1).
  static CuspidalSet holder_cusp(int m, std::size_t n = 2, Rational r = 1, Rational h = 1) {
    if (m < 1) throw DomainError("cusp exponent must be positive");
    // apex curve (0, h t / 2): lateral gap r (t/2)^m over slope bound r m / h
    Rational lateral = r / (Integer(1) << static_cast<unsigned>(m)) / (1 + r * m / h);
    Rational M = std::min({lateral, Rational(h / 2), r});
    return {TruncatedCusp{Rational(1, m), std::move(r), std::move(h), n}, {{m, 1, M}}};
  }

  static CuspidalSet truncated_cusp(CuspExponent alpha, Rational r, Rational h, std::size_t n,
                                    std::vector<UPCCharacteristic> chars = {}) {
    return {TruncatedCusp{std::move(alpha), std::move(r), std::move(h), n}, std::move(chars)};
  }

  static CuspidalSet simplex(std::vector<RationalVector> vertices, std::vector<UPCCharacteristic> chars) {
    return {Simplex{std::move(vertices)}, std::move(chars)};
  }

  /// conv(0, e_1, ..., e_n); inradius 1/(n + sqrt n) >= 1/(2n) gives M.
  static CuspidalSet standard_simplex(std::size_t n) {
    std::vector<RationalVector> v(n + 1, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) v[i + 1][i] = 1;
    return simplex(std::move(v), {{1, 1, Rational(1, static_cast<long>(2 * n))}});
  }

  static CuspidalSet irrational_cusp() { return {IrrationalCusp{}, {}, false}; }
  static CuspidalSet cusp_curve() { return {CuspCurve{}, {}, false}; }

  static CuspidalSet dihedral_region(int d) {
    if (d < 3) throw DomainError("dihedral region needs d >= 3");
    const int k = (d + 1) / 2;
    return {DihedralRegion{d}, {{k, 1, Rational(1, Integer(1) << static_cast<unsigned>(k))}}};
  }

  static CuspidalSet half_space(RationalVector normal, Rational offset) {
    return {HalfSpace{std::move(normal), std::move(offset)}, {{1, 1, Rational(1)}}};
  }

  static CuspidalSet set_union(std::vector<CuspidalSet> members, bool simple = false) {
    return {SetUnion{std::move(members)}, {}, simple};
  }

  const SetKind& kind() const { return kind_; }
  const std::vector<UPCCharacteristic>& declared_chars() const { return chars_; }
  bool simple() const { return simple_; }
  bool is_union() const { return std::holds_alternative<SetUnion>(kind_); }

  std::size_t dimension() const {
    return std::visit(
        [](const auto& k) -> std::size_t {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, TruncatedCusp>) return k.n;
          else if constexpr (std::is_same_v<K, Orthant>) return k.n;
          else if constexpr (std::is_same_v<K, Simplex>) return k.vertices.size() - 1;
          else if constexpr (std::is_same_v<K, HalfSpace>) return k.normal.size();
          else if constexpr (std::is_same_v<K, SetUnion>) return k.members.front().dimension();
          else return 2;
        },
        kind_);
  }

  std::string name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, TruncatedCusp>) {
            std::string a = std::holds_alternative<Sqrt2>(k.alpha) ? "sqrt2" : std::get<Rational>(k.alpha).get_str();
            return "truncated_cusp(alpha=" + a + ",r=" + k.r.get_str() + ",h=" + k.h.get_str() +
                   ",n=" + std::to_string(k.n) + ")";
          } else if constexpr (std::is_same_v<K, Horn>) {
            return "horn(D=" + std::to_string(k.D) + ")";
          } else if constexpr (std::is_same_v<K, Orthant>) {
            return "orthant(n=" + std::to_string(k.n) + ")";
          } else if constexpr (std::is_same_v<K, Simplex>) {
            return "simplex(n=" + std::to_string(k.vertices.size() - 1) + ")";
          } else if constexpr (std::is_same_v<K, IrrationalCusp>) {
            return "irrational_cusp";
          } else if constexpr (std::is_same_v<K, CuspCurve>) {
            return "cusp_curve";
          } else if constexpr (std::is_same_v<K, DihedralRegion>) {
            return "dihedral_region(d=" + std::to_string(k.d) + ")";
          } else if constexpr (std::is_same_v<K, HalfSpace>) {
            return "half_space";
          } else {
            std::string s = "union(";
            for (std::size_t i = 0; i < k.members.size(); ++i) s += (i ? "," : "") + k.members[i].name();
            return s + ")";
          }
        },
        kind_);
  }

  /// Sign-form constraints deciding membership. Irrational powers appear
  /// only where an exponent is sqrt 2 based. Unions have no flat list.
  std::vector<Constraint> constraints() const;

  /// Constraints in distance-like units (graph or barycentric form) whose
  /// minimum is the slack.
  std::vector<Constraint> slack_constraints() const;

  /// kappa with slack >= kappa * dist(x, complement) on the set.
  Rational slack_factor() const;

private:
  void validate() const;

  SetKind kind_;
  std::vector<UPCCharacteristic> chars_;
  bool simple_ = true;
};

namespace detail {

inline Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
inline Polynomial cst(std::size_t n, const Rational& c) { return Polynomial::constant(n, c); }

/// |x'|^2 over the first n-1 coordinates.
inline Polynomial radial_square(std::size_t n) {
  Polynomial s(n);
  for (std::size_t i = 0; i + 1 < n; ++i) s += var(n, i) * var(n, i);
  return s;
}

/// Barycentric coordinates of a simplex as affine polynomials.
inline std::vector<Polynomial> barycentric(const Simplex& s) {
  const std::size_t n = s.vertices.size() - 1;
  // Solve [v_1 - v_0 ... v_n - v_0] mu = x - v_0 symbolically: invert the
  // edge matrix exactly with Gauss-Jordan.
  std::vector<RationalVector> a(n, RationalVector(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = s.vertices[j + 1][i] - s.vertices[0][i];
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw DomainError("simplex vertices are affinely dependent");
    std::swap(a[piv], a[col]);
    const Rational p = a[col][col];
    for (auto& v : a[col]) v /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  std::vector<Polynomial> mu;
  Polynomial sum = cst(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial m = cst(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& inv = a[i][n + j];
      m += (var(n, j) - cst(n, s.vertices[0][j])) * inv;
    }
    sum += m;
    mu.push_back(std::move(m));
  }
  std::vector<Polynomial> lambda;
  lambda.push_back(cst(n, Rational(1)) - sum);
  for (auto& m : mu) lambda.push_back(std::move(m));
  return lambda;
}

inline Constraint nonneg(std::string label, Polynomial p) { return {std::move(label), Relation::NonNegative, std::move(p), {}}; }

} // namespace detail

inline void CuspidalSet::validate() const {
  std::visit(
      [](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, TruncatedCusp>) {
          if (k.n < 2) throw DimensionError("cusp dimension must be >= 2");
          if (k.r <= 0 || k.h <= 0) throw DomainError("cusp radius and height must be positive");
          if (auto* a = std::get_if<Rational>(&k.alpha); a && *a <= 0) throw DomainError("cusp exponent must be positive");
        } else if constexpr (std::is_same_v<K, Orthant>) {
          if (k.n < 1) throw DimensionError("orthant dimension must be >= 1");
        } else if constexpr (std::is_same_v<K, Simplex>) {
          if (k.vertices.size() < 2) throw DimensionError("simplex needs n+1 >= 2 vertices");
          for (const auto& v : k.vertices)
            if (v.size() + 1 != k.vertices.size()) throw DimensionError("simplex vertex has wrong dimension");
          (void)detail::barycentric(k);
        } else if constexpr (std::is_same_v<K, HalfSpace>) {
          if (std::all_of(k.normal.begin(), k.normal.end(), [](const Rational& c) { return c == 0; }))
            throw DomainError("half-space normal must be nonzero");
        } else if constexpr (std::is_same_v<K, SetUnion>) {
          if (k.members.empty()) throw DomainError("empty union");
          for (const auto& m : k.members)
            if (m.dimension() != k.members.front().dimension()) throw DimensionError("union members differ in dimension");
        }
      },
      kind_);
}

inline std::vector<Constraint> CuspidalSet::constraints() const {
  using namespace detail;
  std::vector<Constraint> out;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, TruncatedCusp>) {
          const std::size_t n = k.n;
          const Polynomial xn = var(n, n - 1);
          const Polynomial rad2 = radial_square(n);
          out.push_back(nonneg("x_n >= 0", xn));
          out.push_back(nonneg("x_n <= h", cst(n, k.h) - xn));
          out.push_back(nonneg("|x'| <= r", cst(n, k.r * k.r) - rad2));
          if (const auto* a = std::get_if<Rational>(&k.alpha)) {
            // (|x'|^2/r^2)^p <= (x_n/h)^(2q) for alpha = p/q
            const unsigned p = static_cast<unsigned>(a->get_num().get_ui());
            const unsigned q = static_cast<unsigned>(a->get_den().get_ui());
            Polynomial lhs = (rad2 * Rational(1 / (k.r * k.r))).pow(p);
            Polynomial rhs = (xn * Rational(1 / k.h)).pow(2 * q);
            out.push_back(nonneg("(|x'|/r)^alpha <= x_n/h", rhs - lhs));
          } else {
            Constraint c = nonneg("(|x'|/r)^alpha <= x_n/h", xn * Rational(1 / k.h));
            c.powers.push_back({rad2 * Rational(1 / (k.r * k.r)), SurdRational(Rational(0), Rational(1, 2)), Rational(-1)});
            out.push_back(std::move(c));
          }
        } else if constexpr (std::is_same_v<K, Horn>) {
          const Polynomial x = var(2, 0), y = var(2, 1);
          const Polynomial xd = x.pow(static_cast<unsigned>(k.D));
          out.push_back(nonneg("x >= 0", x));
          out.push_back(nonneg("x <= 1", cst(2, Rational(1)) - x));
          out.push_back(nonneg("y >= x^D", y - xd));
          out.push_back(nonneg("y <= 2x^D", xd * Rational(2) - y));
        } else if constexpr (std::is_same_v<K, Orthant>) {
          for (std::size_t i = 0; i < k.n; ++i) out.push_back(nonneg("x" + std::to_string(i + 1) + " >= 0", var(k.n, i)));
        } else if constexpr (std::is_same_v<K, Simplex>) {
          auto lambda = barycentric(k);
          for (std::size_t i = 0; i < lambda.size(); ++i)
            out.push_back(nonneg("lambda" + std::to_string(i) + " >= 0", std::move(lambda[i])));
        } else if constexpr (std::is_same_v<K, IrrationalCusp>) {
          const Polynomial x = var(2, 0), y = var(2, 1);
          const SurdRational s2 = SurdRational::sqrt2();
          out.push_back(nonneg("x >= 0", x));
          Constraint lower = nonneg("y >= x^sqrt2", y);
          lower.powers.push_back({x, s2, Rational(-1)});
          out.push_back(std::move(lower));
          Constraint upper = nonneg("y <= x^sqrt2 + x^2", x * x - y);
          upper.powers.push_back({x, s2, Rational(1)});
          out.push_back(std::move(upper));
        } else if constexpr (std::is_same_v<K, CuspCurve>) {
          const Polynomial x = var(2, 0), y = var(2, 1);
          out.push_back({"x^3 = y^2", Relation::Zero, x.pow(3) - y.pow(2), {}});
        } else if constexpr (std::is_same_v<K, DihedralRegion>) {
          const Polynomial x = var(2, 0), y = var(2, 1);
          out.push_back(nonneg("x >= 0", x));
          out.push_back(nonneg("y^2 <= x^d", x.pow(static_cast<unsigned>(k.d)) - y * y));
        } else if constexpr (std::is_same_v<K, HalfSpace>) {
          const std::size_t n = k.normal.size();
          Polynomial p = cst(n, k.offset);
          for (std::size_t i = 0; i < n; ++i) p -= var(n, i) * k.normal[i];
          out.push_back(nonneg("a.x <= b", std::move(p)));
        } else {
          throw UnsupportedError("a union has no single constraint list");
        }
      },
      kind_);
  return out;
}

inline std::vector<Constraint> CuspidalSet::slack_constraints() const {
  using namespace detail;
  const SurdRational half(Rational(1, 2));
  std::vector<Constraint> out;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, TruncatedCusp>) {
          const std::size_t n = k.n;
          const Polynomial xn = var(n, n - 1);
          const Polynomial rad2 = radial_square(n);
          out.push_back(nonneg("x_n", xn));
          out.push_back(nonneg("h - x_n", cst(n, k.h) - xn));
          Constraint side = nonneg("r - |x'|", cst(n, k.r));
          side.powers.push_back({rad2, half, Rational(-1)});
          out.push_back(std::move(side));
          // horizontal gap r (x_n/h)^(1/alpha) - |x'|
          SurdRational inv_alpha = std::holds_alternative<Sqrt2>(k.alpha)
                                       ? SurdRational(Rational(0), Rational(1, 2))
                                       : SurdRational(Rational(1 / std::get<Rational>(k.alpha)));
          Constraint lateral = nonneg("r (x_n/h)^(1/alpha) - |x'|", Polynomial(n));
          lateral.powers.push_back({xn * Rational(1 / k.h), inv_alpha, k.r});
          lateral.powers.push_back({rad2, half, Rational(-1)});
          out.push_back(std::move(lateral));
        } else if constexpr (std::is_same_v<K, DihedralRegion>) {
          const Polynomial x = var(2, 0), y = var(2, 1);
          out.push_back(nonneg("x", x));
          Constraint c = nonneg("x^(d/2) - |y|", Polynomial(2));
          c.powers.push_back({x, SurdRational(Rational(k.d, 2)), Rational(1)});
          c.powers.push_back({y * y, half, Rational(-1)});
          out.push_back(std::move(c));
        } else if constexpr (std::is_same_v<K, SetUnion>) {
          throw UnsupportedError("a union has no single constraint list");
        } else {
          // Horn, orthant, simplex, sqrt2 cusp, cusp curve, half-space: the
          // sign form is already in distance-like units.
          out = CuspidalSet(k, {}, true).constraints();
        }
      },
      kind_);
  return out;
}

inline Rational CuspidalSet::slack_factor() const {
  return std::visit(
      [&](const auto& k) -> Rational {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Simplex> || std::is_same_v<K, HalfSpace>) {
          // affine slack g(x) relates to distance by |grad g|; min(1, |grad|^2) <= |grad|
          Rational kappa(1);
          for (const auto& c : constraints()) {
            Rational g2(0);
            for (std::size_t i = 0; i < c.poly.nvars(); ++i) {
              Exponents e(c.poly.nvars(), 0);
              e[i] = 1;
              const Rational gi = c.poly.coefficient(e);
              g2 += gi * gi;
            }
            kappa = std::min(kappa, g2);
          }
          return kappa;
        } else if constexpr (std::is_same_v<K, SetUnion>) {
          Rational kappa(1);
          for (const auto& m : k.members) kappa = std::min(kappa, m.slack_factor());
          return kappa;
        } else {
          return Rational(1);
        }
      },
      kind_);
}

// --- queries ----------------------------------------------------------------

/// Three-valued membership. Rational data is decided exactly; sqrt 2 powers
/// use enclosures refined up to 16x the working precision.
inline Membership classify(const CuspidalSet& set, std::span<const Rational> point) {
  if (point.size() != set.dimension())
    throw DimensionError("point dimension " + std::to_string(point.size()) + " != set dimension " +
                         std::to_string(set.dimension()));
  if (const auto* u = std::get_if<SetUnion>(&set.kind())) {
    bool indeterminate = false;
    for (const auto& m : u->members) {
      const Membership r = classify(m, point);
      if (r == Membership::Inside) return Membership::Inside;
      if (r == Membership::Indeterminate) indeterminate = true;
    }
    return indeterminate ? Membership::Indeterminate : Membership::Outside;
  }
  const auto cons = set.constraints();
  // polynomial constraints first: they guard the bases of the power terms
  for (const auto& c : cons) {
    if (!c.is_polynomial()) continue;
    const Rational v = c.poly.evaluate(point);
    if (c.relation == Relation::Zero ? v != 0 : v < 0) return Membership::Outside;
  }
  bool undecided = false;
  for (const auto& c : cons) {
    if (c.is_polynomial()) continue;
    std::optional<int> s;
    for (mpfr_prec_t prec = default_precision(); prec <= 16 * default_precision(); prec *= 4) {
      s = evaluate(c, point, prec).sign();
      if (s) break;
    }
    if (!s) {
      undecided = true;
    } else if (c.relation == Relation::Zero ? *s != 0 : *s < 0) {
      return Membership::Outside;
    }
  }
  return undecided ? Membership::Indeterminate : Membership::Inside;
}

/// Boolean membership; throws IndeterminateError instead of guessing.
inline bool contains(const CuspidalSet& set, std::span<const Rational> point) {
  switch (classify(set, point)) {
    case Membership::Inside: return true;
    case Membership::Outside: return false;
    case Membership::Indeterminate: break;
  }
  throw IndeterminateError("membership of the point in " + set.name() +
                           " is not decided by the certified enclosure");
}

inline bool contains(const CuspidalSet& set, std::initializer_list<Rational> point) {
  const RationalVector v(point);
  return contains(set, std::span<const Rational>(v));
}

/// Minimum constraint slack (distance-like units), as an exact rational or a
/// certified dyadic lower bound; 0 on the boundary.
inline Rational constraint_slack(const CuspidalSet& set, std::span<const Rational> point) {
  if (!contains(set, point)) throw DomainError("constraint_slack: point lies outside " + set.name());
  if (const auto* u = std::get_if<SetUnion>(&set.kind())) {
    Rational best(0);
    for (const auto& m : u->members)
      if (classify(m, point) == Membership::Inside) best = std::max(best, constraint_slack(m, point));
    return best;
  }
  std::optional<Rational> slack;
  for (const auto& c : set.slack_constraints()) {
    const Rational v = c.relation == Relation::Zero ? Rational(0) : evaluate(c, point).lower_bound();
    slack = slack ? std::min(*slack, v) : v;
  }
  return std::max(Rational(0), slack.value_or(Rational(0)));
}

/// 2 min over declared characteristics of max{m, D}.
inline int d_invariant(const CuspidalSet& set) {
  if (set.declared_chars().empty()) throw NotUPCError(set.name() + " has no declared UPC characteristic");
  int best = std::max(set.declared_chars().front().m, set.declared_chars().front().D);
  for (const auto& c : set.declared_chars()) best = std::min(best, std::max(c.m, c.D));
  return 2 * best;
}

/// 2 min over declared characteristics of m * D.
inline int d_prime_invariant(const CuspidalSet& set) {
  if (set.declared_chars().empty()) throw NotUPCError(set.name() + " has no declared UPC characteristic");
  int best = set.declared_chars().front().m * set.declared_chars().front().D;
  for (const auto& c : set.declared_chars()) best = std::min(best, c.m * c.D);
  return 2 * best;
}

/// Every catalog entry used by the test suites and the invariant ledger.
inline std::vector<CuspidalSet> catalog() {
  std::vector<CuspidalSet> sets;
  for (int D = 1; D <= 3; ++D) sets.push_back(CuspidalSet::horn(D));
  for (int m = 1; m <= 3; ++m) sets.push_back(CuspidalSet::holder_cusp(m));
  sets.push_back(CuspidalSet::holder_cusp(2, 3));
  sets.push_back(CuspidalSet::orthant(2));
  sets.push_back(CuspidalSet::orthant(3));
  sets.push_back(CuspidalSet::standard_simplex(2));
  sets.push_back(CuspidalSet::standard_simplex(3));
  sets.push_back(CuspidalSet::truncated_cusp(Sqrt2{}, 1, 1, 2));
  sets.push_back(CuspidalSet::irrational_cusp());
  sets.push_back(CuspidalSet::cusp_curve());
  for (int d = 3; d <= 5; ++d) sets.push_back(CuspidalSet::dihedral_region(d));
  sets.push_back(CuspidalSet::set_union({CuspidalSet::irrational_cusp(),
                                         CuspidalSet::half_space({Rational(1), Rational(0)}, Rational(0))}));
  return sets;
}

} // namespace analytica
