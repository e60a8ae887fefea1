#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qfdense/fixed_real.hpp"
#include "qfdense/forms.hpp"
#include "qfdense/isometries.hpp"
#include "qfdense/weyl_sums.hpp"

namespace qfdense {

/// eta = (alpha, y, z) with y^2 - 4 alpha z = t.
struct TargetLift {
  FixedReal alpha, y, z, t;
};

/// y = 0, z = -t / (4 alpha). Throws AlphaZero when alpha cannot be told
/// apart from 0.
TargetLift target_lift(const FixedReal& alpha, const FixedReal& t,
                       int log2_tol = kDefaultToleranceLog2);

struct Offset {
  /// (0, a_m, b_m).
  IntVec3 u;
  /// Squared distance |xi M_m + u - eta|^2 (first coordinate cancels).
  FixedReal miss_sq;
  double miss = 0.0;
};

/// The integer u = (0, a, b) minimising |xi M_m + u - eta|, rounding ties
/// to even.
Offset nearest_offset(const ShiftVector& xi, const Integer& m, const TargetLift& eta,
                      int log2_tol = kDefaultToleranceLog2);

struct Solution {
  std::int64_t m = 0;
  IntVec3 u;
  /// u M_m^{-1} = (0, a_m, b_m - m a_m), in the frame the scan runs in.
  IntVec3 v;
  /// v mapped back to the caller's coordinates (equal to v without a frame).
  IntVec3 original;
  FixedReal value;
  FixedReal residual;
  double torus_miss = 0.0;
};

struct SolveParams {
  std::int64_t T = 0;
  double delta = 0.0;
  double scan_c = 1.0;
  double bound_C = 32.0;
  /// When set, the scan runs on xi M and reported vectors are mapped back
  /// through M^{-1}; values and filters always refer to the original xi.
  std::optional<SOQMatrix> frame;
};

struct SolveReport {
  SolveParams params;
  /// Distinct `original` vectors, sorted by m.
  std::vector<Solution> solutions;

  std::size_t count() const { return solutions.size(); }
};

/// The m-scan over 1 <= m <= scan_c sqrt(T): keep m whose miss is at most
/// scan_c delta, then keep v with |v| <= T and |Q_xi(v) - t| <= bound_C delta.
SolveReport find_solutions(const ShiftVector& xi, const FixedReal& t, const SolveParams& params,
                           const ScanOptions& opts = {});

inline constexpr std::int64_t kBruteForceCap = 300;

struct OracleOptions {
  std::int64_t cap = kBruteForceCap;
  bool collect_members = false;
  int threads = 1;
  int log2_tol = kDefaultToleranceLog2;
};

struct OracleResult {
  std::int64_t count = 0;
  FixedReal min_residual;
  /// Lexicographically least minimiser.
  IntVec3 argmin;
  /// Every counted v in lexicographic order (only when requested).
  std::vector<IntVec3> members;
};

/// Exhaustive scan over |v| <= T of |Q_xi(v) - t| <= delta.
OracleResult count_values_bruteforce(const TernaryForm& q, const ShiftVector& xi,
                                     const FixedReal& t, std::int64_t T, double delta,
                                     const OracleOptions& opts = {});

enum class ExponentMode { oracle, solver };

struct ExponentRow {
  std::int64_t T = 0;
  FixedReal min_residual;
  /// -log(min_residual) / log(T); empty when the residual is exactly zero.
  std::optional<double> omega_hat;
};

struct ExponentParams {
  ExponentMode mode = ExponentMode::oracle;
  /// Solver mode only.
  double scan_c = 1.0;
  std::optional<SOQMatrix> frame;
  OracleOptions oracle;
  ScanOptions scan;
};

/// One row per grid entry; the grid must be strictly increasing with T >= 2.
std::vector<ExponentRow> estimate_critical_exponent(const ShiftVector& xi, const FixedReal& t,
                                                    const std::vector<std::int64_t>& grid,
                                                    const ExponentParams& params = {});

}  // namespace qfdense
