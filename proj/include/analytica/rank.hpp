#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "analytica/error.hpp"
#include "analytica/polynomial.hpp"
#include "analytica/rational.hpp"

namespace analytica {

using PolynomialMatrix = std::vector<std::vector<Polynomial>>;

/// d p_i / d x_j.
inline PolynomialMatrix jacobian(const PolynomialMap& p) {
  PolynomialMatrix J(p.target_dim());
  for (std::size_t i = 0; i < p.target_dim(); ++i)
    for (std::size_t j = 0; j < p.source_dim(); ++j) J[i].push_back(p[i].derivative(j));
  return J;
}

/// Rank of a rational matrix: rows scaled to integers, then fraction-free
/// (Bareiss) elimination over Z.
inline int exact_rank(const std::vector<RationalVector>& m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  std::vector<std::vector<Integer>> a;
  for (const auto& row : m) {
    Integer l = 1;
    for (const auto& v : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Integer> r;
    for (const auto& v : row) r.push_back(Integer(v.get_num() * (l / v.get_den())));
    a.push_back(std::move(r));
  }
  const std::size_t rows = a.size();
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        Integer v = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

inline std::vector<RationalVector> evaluate_matrix(const PolynomialMatrix& J, std::span<const Rational> x) {
  std::vector<RationalVector> m;
  for (const auto& row : J) {
    RationalVector r;
    for (const auto& e : row) r.push_back(e.evaluate(x));
    m.push_back(std::move(r));
  }
  return m;
}

struct RankReport {
  std::string map_id;
  int generic_rank = 0;
  int trials = 0;
  RationalVector witness;
  std::uint64_t seed = 0;
};

inline constexpr int kDefaultRankTrials = 8;
inline constexpr long kRankPointHeight = 10000;

/// Maximum Jacobian rank over random rational points of height <= 10^4.
/// Equals the generic rank unless every trial lands on a proper subvariety.
inline RankReport generic_rank(const PolynomialMap& p, int trials = kDefaultRankTrials, std::uint64_t seed = 1,
                               std::string map_id = "map") {
  if (trials < 1) throw DomainError("generic_rank needs trials >= 1");
  const PolynomialMatrix J = jacobian(p);
  Rng rng(seed);
  RankReport r{std::move(map_id), -1, trials, {}, seed};
  for (int t = 0; t < trials; ++t) {
    RationalVector x(p.source_dim());
    for (auto& c : x) c = rng.rational(kRankPointHeight);
    const int k = exact_rank(evaluate_matrix(J, x));
    if (k > r.generic_rank) {
      r.generic_rank = k;
      r.witness = std::move(x);
    }
  }
  return r;
}

struct InjectivityVerdict {
  bool strongly_injective = false;
  RankReport report;
};

/// A square map R^n -> R^n is strongly injective iff its generic rank is n.
inline InjectivityVerdict strong_injectivity_verdict(const PolynomialMap& p, int trials = kDefaultRankTrials,
                                                     std::uint64_t seed = 1, std::string map_id = "map") {
  if (p.source_dim() != p.target_dim())
    throw DimensionError("strong injectivity needs a square map, got " + std::to_string(p.source_dim()) + " -> " +
                         std::to_string(p.target_dim()));
  RankReport r = generic_rank(p, trials, seed, std::move(map_id));
  return {r.generic_rank == static_cast<int>(p.source_dim()), std::move(r)};
}

} // namespace analytica
