#pragma once

#include <cstdint>
#include <vector>

#include "qfdense/fixed_real.hpp"

namespace qfdense {

/// A point of R^2/Z^2 with both coordinates reduced to [0, 1).
struct TorusPoint2 {
  FixedReal x, y;

  /// Reduces both coordinates mod 1.
  static TorusPoint2 reduce(const FixedReal& x, const FixedReal& y);
};

struct WeylSumResult {
  double re = 0.0, im = 0.0;
  std::int64_t T = 0;
  std::int64_t n = 0;

  double abs() const;
  double norm_sq() const { return re * re + im * im; }
};

/// Execution knobs shared by the range scans. Results never depend on
/// `threads`: work is split into fixed chunks of 2^16 indices.
struct ScanOptions {
  int threads = 1;
  int log2_tol = kDefaultToleranceLog2;
};

inline constexpr std::int64_t kScanChunk = std::int64_t{1} << 16;

/// phi(m) = (2 alpha m + beta, alpha m^2 + beta m + gamma) mod 1.
/// Throws PrecisionExhausted when either coordinate's error exceeds
/// 2^log2_tol (the error grows like m^2 err(alpha)).
TorusPoint2 phi(const FixedReal& alpha, const FixedReal& beta, const FixedReal& gamma,
                std::int64_t m, int log2_tol = kDefaultToleranceLog2);

/// Euclidean distance on the torus: sqrt(dx^2 + dy^2) with each coordinate
/// difference measured to the nearest integer.
double torus_dist(const TorusPoint2& u, const TorusPoint2& v);

struct OrbitCount {
  std::int64_t count = 0;
  /// The hitting m in increasing order (only when requested).
  std::vector<std::int64_t> hits;
};

/// #{1 <= m <= T : ||phi(m) - v0|| <= delta}; distance exactly delta counts.
OrbitCount count_orbit_hits(const FixedReal& alpha, const FixedReal& beta,
                            const FixedReal& gamma, const TorusPoint2& v0, std::int64_t T,
                            double delta, const ScanOptions& opts = {}, bool record_hits = false);

/// S_T(n, alpha, beta) = sum_{m=1}^T e(n alpha m^2 + beta m).
WeylSumResult weyl_sum(std::int64_t n, const FixedReal& alpha, const FixedReal& beta,
                       std::int64_t T, const ScanOptions& opts = {});

/// T + 2 sum_{m=1}^T min(1/||2 n m alpha||, T); an upper bound for |S_T|^2
/// valid for every beta.
double weyl_differencing_bound(std::int64_t n, const FixedReal& alpha, std::int64_t T,
                               const ScanOptions& opts = {});

/// sum_{m=1}^{M T} min(1/||m alpha||, T). Each term uses a certified lower
/// bound for ||m alpha||, so the result never undershoots.
double sum_min(const FixedReal& alpha, std::int64_t M, std::int64_t T,
               const ScanOptions& opts = {});

/// 4 M T^2 / q + 8 (M + 1) T ln T with q from dirichlet_approx(alpha, T).
double sum_min_explicit_bound(const FixedReal& alpha, std::int64_t M, std::int64_t T);

}  // namespace qfdense
