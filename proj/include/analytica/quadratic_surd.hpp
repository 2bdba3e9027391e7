#pragma once

#include <compare>
#include <string>

#include "analytica/interval.hpp"
#include "analytica/rational.hpp"

namespace analytica {

/// Exact numbers a + b*sqrt(2) over a ring T (long for the value group of
/// valuations, Rational for coefficients in Q(sqrt 2)). Ordering is decided
/// exactly through the sign of a^2 - 2 b^2 when a and b disagree in sign.
template <class T>
struct QuadraticSurd {
  T a{0};
  T b{0};

  QuadraticSurd() = default;
  QuadraticSurd(T rational_part, T sqrt2_part = T(0)) : a(std::move(rational_part)), b(std::move(sqrt2_part)) {}

  static QuadraticSurd sqrt2() { return {T(0), T(1)}; }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  int sign() const {
    const int sa = a > 0 ? 1 : (a < 0 ? -1 : 0);
    const int sb = b > 0 ? 1 : (b < 0 ? -1 : 0);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with 2 b^2
    const T lhs = a * a;
    const T rhs = T(2) * b * b;
    if (lhs == rhs) return 0; // impossible unless both zero; kept for exactness
    return (lhs > rhs) ? sa : sb;
  }

  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) { return {x.a + y.a, x.b + y.b}; }
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return {x.a - y.a, x.b - y.b}; }
  friend QuadraticSurd operator-(const QuadraticSurd& x) { return {T(-x.a), T(-x.b)}; }
  friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
    return {x.a * y.a + T(2) * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  QuadraticSurd& operator+=(const QuadraticSurd& o) { return *this = *this + o; }
  QuadraticSurd& operator*=(const QuadraticSurd& o) { return *this = *this * o; }

  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) { return x.a == y.a && x.b == y.b; }
  friend std::strong_ordering operator<=>(const QuadraticSurd& x, const QuadraticSurd& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// Orders of one-variable germs that may involve |t|^(k sqrt 2).
using SurdOrder = QuadraticSurd<long>;
/// Elements of Q(sqrt 2).
using SurdRational = QuadraticSurd<Rational>;

inline SurdRational inverse(const SurdRational& x) {
  const Rational norm = x.a * x.a - 2 * x.b * x.b;
  if (norm == 0) throw DomainError("inverse of zero in Q(sqrt 2)");
  return {x.a / norm, -x.b / norm};
}

inline Interval enclose(const SurdRational& x, mpfr_prec_t precision = default_precision()) {
  return Interval(x.a, precision) + Interval(x.b, precision) * Interval::sqrt2(precision);
}

inline std::string to_string(const SurdOrder& o) {
  if (o.b == 0) return std::to_string(o.a);
  std::string s = o.a == 0 ? std::string() : std::to_string(o.a) + (o.b > 0 ? "+" : "");
  if (o.b == 1 || o.b == -1) return s + (o.b < 0 ? "-" : "") + "sqrt2";
  return s + std::to_string(o.b) + "*sqrt2";
}

} // namespace analytica
