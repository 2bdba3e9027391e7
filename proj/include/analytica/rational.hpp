#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "analytica/error.hpp"

namespace analytica {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", "p" or "-p/q". The result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw ParseError("empty rational literal");
  auto valid_int = [](std::string_view part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(num.begin());
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational literal '" + s + "'");
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

/// Integer power allowing negative exponents (base must then be nonzero).
inline Rational pow_int(const Rational& base, long exponent) {
  if (exponent >= 0) return pow(base, static_cast<unsigned>(exponent));
  if (base == 0) throw DomainError("zero raised to a negative power");
  Rational inv = 1 / base;
  return pow(inv, static_cast<unsigned>(-exponent));
}

/// Exact k-th root of a rational when it exists (real root for odd k).
inline std::optional<Rational> exact_root(const Rational& value, unsigned k) {
  if (k == 0) return std::nullopt;
  if (k == 1) return value;
  if (value == 0) return Rational(0);
  const bool negative = value < 0;
  if (negative && k % 2 == 0) return std::nullopt;
  Integer num = abs(value.get_num());
  Integer den = value.get_den();
  Integer rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) == 0) return std::nullopt;
  Rational r(negative ? Integer(-rn) : rn, rd);
  r.canonicalize();
  return r;
}

/// Exact value of base^(p/q) when it is rational; nullopt otherwise.
inline std::optional<Rational> exact_rational_power(const Rational& base, const Rational& exponent) {
  const Integer& p = exponent.get_num();
  const Integer& q = exponent.get_den();
  if (!q.fits_uint_p() || !p.fits_slong_p()) return std::nullopt;
  auto root = exact_root(base, static_cast<unsigned>(q.get_ui()));
  if (!root) return std::nullopt;
  if (*root == 0 && p < 0) return std::nullopt;
  return pow_int(*root, p.get_si());
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Deterministic bounded draws. The standard distributions are not portable
/// across library implementations, so draws are reduced by modulo here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [lo, hi].
  long uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1U;
    return lo + static_cast<long>(engine_() % span);
  }

  /// Rational with numerator in [-height, height] and denominator in [1, height].
  Rational rational(long height) {
    Rational r(uniform_int(-height, height), uniform_int(1, height));
    r.canonicalize();
    return r;
  }

  /// Rational in [lo, hi] on a grid of step (hi - lo) / resolution.
  Rational rational_in(const Rational& lo, const Rational& hi, long resolution = 10000) {
    Rational t(uniform_int(0, resolution), resolution);
    Rational r = lo + (hi - lo) * t;
    r.canonicalize();
    return r;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace analytica
