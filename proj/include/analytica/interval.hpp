#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "analytica/error.hpp"
#include "analytica/rational.hpp"

namespace analytica {

/// Working precision (bits) for certified enclosures. Read once from
/// ANALYTICA_PRECISION; defaults to 256 and is clamped to [64, 1 << 16].
inline mpfr_prec_t default_precision() {
  static const mpfr_prec_t bits = [] {
    long value = 256;
    if (const char* env = std::getenv("ANALYTICA_PRECISION")) {
      char* end = nullptr;
      const long parsed = std::strtol(env, &end, 10);
      if (end != env && *end == '\0') value = parsed;
    }
    return static_cast<mpfr_prec_t>(std::clamp(value, 64L, 65536L));
  }();
  return bits;
}

/// Owning wrapper over an mpfr_t.
class Real {
public:
  explicit Real(mpfr_prec_t precision = default_precision()) { mpfr_init2(value_, precision); mpfr_set_zero(value_, 1); }
  Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  ~Real() { mpfr_clear(value_); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(value_); }
  bool is_nan() const { return mpfr_nan_p(value_) != 0; }

  /// Exact dyadic rational equal to this value (finite values only).
  Rational to_rational() const {
    if (!mpfr_number_p(value_)) throw DomainError("non-finite value has no rational form");
    if (mpfr_zero_p(value_)) return Rational(0);
    Integer mantissa;
    const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
    Rational r(mantissa);
    if (e >= 0) {
      mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
      mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
  }

  /// Scientific notation with the given number of significant digits.
  std::string to_string(int digits = 20) const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(value_)) return "0";
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*Re", digits - 1, value_);
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
  }

  /// log10 of |value| as a double, usable for values far below DBL_MIN.
  double log10_abs() const {
    if (mpfr_zero_p(value_)) return -INFINITY;
    long exponent = 0;
    const double mant = mpfr_get_d_2exp(&exponent, value_, MPFR_RNDN);
    return std::log10(std::fabs(mant)) + static_cast<double>(exponent) * std::log10(2.0);
  }

private:
  mpfr_t value_;
};

/// Closed interval [lo, hi] with outward-rounded endpoints. Every operation
/// returns an enclosure of the exact result set.
class Interval {
public:
  explicit Interval(mpfr_prec_t precision = default_precision()) : lo_(precision), hi_(precision) {}

  Interval(const Rational& q, mpfr_prec_t precision = default_precision()) : lo_(precision), hi_(precision) {
    mpfr_set_q(lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  }

  static Interval from_long(long v, mpfr_prec_t precision = default_precision()) {
    return Interval(Rational(v), precision);
  }

  static Interval pi(mpfr_prec_t precision = default_precision()) {
    Interval r(precision);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
  }

  static Interval sqrt2(mpfr_prec_t precision = default_precision()) {
    Interval r(precision);
    mpfr_sqrt_ui(r.lo_.get(), 2, MPFR_RNDD);
    mpfr_sqrt_ui(r.hi_.get(), 2, MPFR_RNDU);
    return r;
  }

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
  bool certainly_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }
  bool certainly_nonpositive() const { return mpfr_sgn(hi_.get()) <= 0; }
  bool contains_zero() const { return !certainly_positive() && !certainly_negative(); }

  double mid() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }

  /// Upper bound on the width.
  double width() const {
    Real w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
  }

  /// Upper bound on max |x| over the interval.
  Real magnitude() const {
    Real a(precision()), b(precision());
    mpfr_abs(a.get(), lo_.get(), MPFR_RNDU);
    mpfr_abs(b.get(), hi_.get(), MPFR_RNDU);
    if (mpfr_cmp(a.get(), b.get()) < 0) return b;
    return a;
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a) {
    Interval r(a.precision());
    mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = std::max(a.precision(), b.precision());
    Interval r(p);
    Real t(p);
    const mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
    const mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
    bool first = true;
    for (auto x : xs) {
      for (auto y : ys) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    return r;
  }

  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainError("interval division by an enclosure containing zero");
    const mpfr_prec_t p = std::max(a.precision(), b.precision());
    Interval inv(p);
    mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
    return a * inv;
  }

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  friend Interval exp(const Interval& a) {
    Interval r(a.precision());
    mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval log(const Interval& a) {
    if (!a.certainly_positive()) throw DomainError("log of an enclosure not certainly positive");
    Interval r(a.precision());
    mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval sqrt(const Interval& a) {
    if (a.certainly_negative() || mpfr_sgn(a.lo_.get()) < 0)
      throw DomainError("sqrt of an enclosure with negative part");
    Interval r(a.precision());
    mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }

  /// Integer power, exact sign handling for even exponents.
  friend Interval pow(const Interval& a, long k) {
    if (k == 0) return Interval(Rational(1), a.precision());
    if (k < 0) return Interval(Rational(1), a.precision()) / pow(a, -k);
    Interval r(a.precision());
    if (k % 2 == 1 || a.certainly_nonnegative()) {
      // monotone increasing on the relevant range
      mpfr_pow_si(r.lo_.get(), a.lo_.get(), k, MPFR_RNDD);
      mpfr_pow_si(r.hi_.get(), a.hi_.get(), k, MPFR_RNDU);
      return r;
    }
    if (a.certainly_nonpositive()) {
      mpfr_pow_si(r.lo_.get(), a.hi_.get(), k, MPFR_RNDD);
      mpfr_pow_si(r.hi_.get(), a.lo_.get(), k, MPFR_RNDU);
      return r;
    }
    Real m = a.magnitude();
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_pow_si(r.hi_.get(), m.get(), k, MPFR_RNDU);
    return r;
  }

  /// Real k-th root; even k requires a nonnegative enclosure.
  friend Interval root(const Interval& a, unsigned long k) {
    if (k % 2 == 0 && mpfr_sgn(a.lo_.get()) < 0) throw DomainError("even root of a negative enclosure");
    Interval r(a.precision());
    mpfr_rootn_ui(r.lo_.get(), a.lo_.get(), k, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_.get(), a.hi_.get(), k, MPFR_RNDU);
    return r;
  }

  /// base^exponent for base >= 0 and exponent > 0 (both enclosures). The map
  /// is monotone in each argument on that box, so corners bound it.
  friend Interval pow(const Interval& base, const Interval& exponent) {
    if (mpfr_sgn(base.lo_.get()) < 0) throw DomainError("real power of a negative enclosure");
    if (!exponent.certainly_positive()) throw DomainError("power exponent must be certainly positive");
    const mpfr_prec_t p = std::max(base.precision(), exponent.precision());
    Interval r(p);
    Real t(p);
    bool first = true;
    for (auto b : {base.lo_.get(), base.hi_.get()}) {
      for (auto e : {exponent.lo_.get(), exponent.hi_.get()}) {
        mpfr_pow(t.get(), b, e, MPFR_RNDD);
        if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_pow(t.get(), b, e, MPFR_RNDU);
        if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    return r;
  }

  /// Rational exponent p/q: q-th root then integer power.
  friend Interval pow(const Interval& base, const Rational& exponent) {
    if (is_integer(exponent)) return pow(base, exponent.get_num().get_si());
    const unsigned long q = exponent.get_den().get_ui();
    if (q % 2 == 0 && mpfr_sgn(base.lo_.get()) < 0) throw DomainError("even root of a negative enclosure");
    return pow(root(base, q), exponent.get_num().get_si());
  }

  friend Interval cos(const Interval& a) {
    const mpfr_prec_t p = a.precision();
    Interval r(p);
    Real c1(p), c2(p);
    mpfr_cos(c1.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_cos(c2.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_min(r.lo_.get(), c1.get(), c2.get(), MPFR_RNDD);
    mpfr_cos(c1.get(), a.lo_.get(), MPFR_RNDU);
    mpfr_cos(c2.get(), a.hi_.get(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), c1.get(), c2.get(), MPFR_RNDU);
    // Interior extrema at multiples of pi: k in [ceil(lo/pi), floor(hi/pi)].
    const Interval pi_enc = Interval::pi(p);
    Real q(p), kmin(p), kmax(p);
    mpfr_div(q.get(), a.lo_.get(), pi_enc.lo_.get(), MPFR_RNDD);
    mpfr_div(kmin.get(), a.lo_.get(), pi_enc.hi_.get(), MPFR_RNDD);
    mpfr_min(kmin.get(), kmin.get(), q.get(), MPFR_RNDD);
    mpfr_ceil(kmin.get(), kmin.get());
    mpfr_div(q.get(), a.hi_.get(), pi_enc.lo_.get(), MPFR_RNDU);
    mpfr_div(kmax.get(), a.hi_.get(), pi_enc.hi_.get(), MPFR_RNDU);
    mpfr_max(kmax.get(), kmax.get(), q.get(), MPFR_RNDU);
    mpfr_floor(kmax.get(), kmax.get());
    if (mpfr_cmp(kmin.get(), kmax.get()) <= 0) {
      const long k0 = mpfr_get_si(kmin.get(), MPFR_RNDN);
      const long k1 = mpfr_get_si(kmax.get(), MPFR_RNDN);
      const bool has_even = (k1 > k0) || (k0 % 2 == 0);
      const bool has_odd = (k1 > k0) || (k0 % 2 != 0);
      if (has_even) mpfr_set_ui(r.hi_.get(), 1, MPFR_RNDU);
      if (has_odd) mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
    }
    return r;
  }

  friend Interval sin(const Interval& a) {
    Interval half_pi = Interval::pi(a.precision()) * Interval(Rational(1, 2), a.precision());
    return cos(a - half_pi);
  }

  /// Hull of two enclosures.
  friend Interval hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }

private:
  Real lo_;
  Real hi_;
};

} // namespace analytica
