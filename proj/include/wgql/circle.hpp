#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wgql/arith.hpp"
#include "wgql/charsum.hpp"
#include "wgql/rational.hpp"

namespace wgql {

inline constexpr u64 kMaxExactCountWindow = 1'000'000'000;
inline constexpr u64 kMaxTableWindow = 10'000'000;

/// Range of n with n^k in (x / 2^(k+1), x]. Every module sums over this
/// window, strict at the lower end and inclusive at the upper end.
struct PowerWindow {
  unsigned k = 2;
  u64 x = 0;
  u64 n_min = 1;
  u64 n_max = 0;
  bool degenerate = false;  // x < 2^(k+1)

  bool empty() const { return degenerate || n_min > n_max; }
  u64 size() const { return empty() ? 0 : n_max - n_min + 1; }
  bool contains(u64 n) const { return !empty() && n >= n_min && n <= n_max; }
};

PowerWindow power_window(unsigned k, u64 x);

/// T_k(lambda) = sum over the window of e(n^k lambda).
cplx t_sum(unsigned k, double lambda, u64 x);
/// (1/k) sum_{x/2^(k+1) < m <= x} m^(1/k - 1) e(lambda m), the integral
/// T_k approximates after substituting m = n^k.
cplx t_sum_smoothed(unsigned k, double lambda, u64 x);
/// S_k(lambda) = sum over the window of Lambda(n) e(n^k lambda).
cplx s_sum(unsigned k, double lambda, u64 x, const PrimeTable& table);
/// W_k(lambda, chi) = S_k(lambda, chi) - E_0 T_k(lambda); E_0 = 1 iff chi is principal.
cplx w_sum(unsigned k, double lambda, const DirichletCharacter& chi, u64 x, const PrimeTable& table);

struct Arc {
  u64 a;
  u64 q;
  Rational center;      // a/q
  Rational half_width;  // 1/(Qq)
};

/// Major arcs I(a, q) = [a/q - 1/(Qq), a/q + 1/(Qq)], q <= P, (a, q) = 1,
/// inside the unit window [1/Q, 1 + 1/Q).
struct ArcPartition {
  u64 P = 1;
  u64 Q = 1;
  bool diagnostic = false;  // overlap checks skipped
  std::vector<Arc> arcs;

  double major_measure() const;
};

/// Requires Q > 2 P^2 unless allow_overlap is set, and verifies the arcs are
/// pairwise disjoint (closed intervals, including the wrap at 1).
ArcPartition arc_partition(u64 P, u64 Q, bool allow_overlap = false);

struct ArcLocation {
  bool major = false;
  u64 a = 0;
  u64 q = 0;
};

/// First arc (smallest q) containing alpha; intervals are closed.
ArcLocation classify_alpha(double alpha, const ArcPartition& partition);

using PrimeQuadruple = std::array<u64, 4>;  // (p2, p3, p4, p5)

struct RepresentationReport {
  i64 N = 0;
  u64 x = 0;
  double weighted_count = 0.0;   // Lambda-weighted, windowed
  u64 unweighted_count = 0;      // prime tuples, windowed
  u64 unconstrained_count = 0;   // prime tuples, no window
  std::optional<PrimeQuadruple> witness;  // lexicographically smallest, unconstrained
  std::optional<double> predicted;
  std::optional<double> ratio;
};

/// Direct count: loops over (n3, n4, n5) and tests whether the remainder is a
/// square in the k = 2 window. Needs table.limit >= max(sqrt(x), sqrt(N)).
RepresentationReport r_exact(i64 N, u64 x, const PrimeTable& table);

enum class CountMode { weighted, unweighted };

struct RepresentationTable {
  u64 x = 0;
  CountMode mode = CountMode::unweighted;
  std::vector<double> values;  // values[N] for 0 <= N <= 4x

  double operator[](u64 N) const { return N < values.size() ? values[N] : 0.0; }
  /// Exact count in unweighted mode.
  u64 count(u64 N) const;
};

/// R(N) or r(N) for every N <= 4x from the pair tables n2^2 + n3^3 and
/// n4^4 + n5^5, combined by a sparse convolution.
RepresentationTable r_all(u64 x, const PrimeTable& table, CountMode mode);

/// Number of prime quadruples with p2^2 + p3^3 + p4^4 + p5^5 = N for every
/// N <= n_max, no window.
std::vector<std::uint32_t> count_unconstrained_all(u64 n_max, const PrimeTable& table);

/// Lexicographically smallest unconstrained witness for N, if any.
std::optional<PrimeQuadruple> smallest_witness(i64 N, const PrimeTable& table);

/// prod_k S_k(j / M) on the full grid j = 0 .. M-1.
class CircleGrid {
 public:
  CircleGrid(u64 x, u64 M, const PrimeTable& table);

  u64 x() const { return x_; }
  u64 size() const { return M_; }
  std::span<const cplx> product() const { return product_; }

  /// (1/M) sum_j prod_k S_k(j/M) e(-N j / M).
  cplx integral(i64 N) const;
  /// Same sum restricted to grid points with mask[j] != 0.
  cplx integral(i64 N, std::span<const char> mask) const;

 private:
  u64 x_;
  u64 M_;
  std::vector<cplx> product_;
};

/// Requires M > 4x so the grid does not alias any attainable sum.
cplx discrete_circle(i64 N, u64 x, u64 M, const PrimeTable& table);

/// Smallest power of two exceeding 4x.
u64 default_grid_size(u64 x);

/// Major-arc mask of the grid j/M, each point placed in [1/Q, 1 + 1/Q).
std::vector<char> major_arc_mask(const ArcPartition& partition, u64 M);

/// Real part of the major-arc part of the discrete circle integral divided by
/// the full integral R(N).
double major_arc_share(i64 N, u64 x, const ArcPartition& partition, u64 M, const PrimeTable& table);

enum class ScanMode { constrained, unconstrained };

struct ScanBlock {
  u64 lower;  // exclusive
  u64 upper;  // inclusive
  u64 evens = 0;
  u64 exceptions = 0;
  double density() const { return evens ? static_cast<double>(exceptions) / static_cast<double>(evens) : 0.0; }
};

struct ExceptionalScan {
  u64 x_max = 0;
  ScanMode mode = ScanMode::unconstrained;
  u64 window_x = 0;  // constrained mode only
  std::vector<u64> exceptional;  // sorted even N <= x_max with no representation
  std::vector<ScanBlock> blocks;  // dyadic (2^j, 2^(j+1)]
};

/// Exhaustive scan of positive even N <= x_max. Constrained mode counts
/// windowed prime tuples for window parameter window_x (N <= 4 window_x).
ExceptionalScan scan_exceptional(u64 x_max, ScanMode mode, const PrimeTable& table, u64 window_x = 0);

/// Exceptional share of the even N in (lower, upper].
ScanBlock exceptional_block(const ExceptionalScan& scan, u64 lower, u64 upper);

struct PredictionRow {
  i64 N = 0;
  double weighted_count = 0.0;
  double p0 = 0.0;
  double series_product = 0.0;
  double main_term = 0.0;
  std::optional<double> ratio;  // empty when the prediction is zero (excluded)
};

struct PredictionSummary {
  u64 x = 0;
  u64 P = 0;
  std::vector<PredictionRow> rows;
  std::size_t used = 0;
  double min = 0.0, median = 0.0, max = 0.0, mean = 0.0;
};

u64 default_prediction_limit(u64 x);
/// Distinct even N drawn uniformly from (x/2, x], sorted.
std::vector<i64> sample_even(u64 x, std::size_t count, std::uint64_t seed);
/// R(N) against the main term for each N; odd N predict 0 and are excluded.
PredictionSummary predict_at(u64 x, std::span<const i64> Ns, u64 P, const PrimeTable& table);
PredictionSummary predict_vs_actual(u64 x, std::size_t sample_size, u64 P, const PrimeTable& table,
                                    std::uint64_t seed);

/// 1 - (13/180)/128, checked against 23027/23040.
Rational exponent_check();

}  // namespace wgql
