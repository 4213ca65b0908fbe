#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wgql/arith.hpp"

namespace wgql {

inline constexpr u64 kMaxLocalModulus = 1'000'000;
inline constexpr u64 kMaxSeriesModulus = 100'000;
inline constexpr u64 kMaxSeriesLimit = 10'000;
inline constexpr u64 kMaxLocalReconstruction = 1'000;
inline constexpr unsigned kMaxLiftingDepth = 8;
inline constexpr double kStabilizationTolerance = 1e-12;
inline constexpr double kObstructionThreshold = 1e-12;

/// M(p^alpha, N): number of unit 4-tuples (l2, l3, l4, l5) mod p^alpha with
/// l2^2 + l3^3 + l4^4 + l5^5 = N. Exact; pairs (l2, l3) and (l4, l5) are
/// histogrammed separately and then matched.
u64 local_count(u64 p, unsigned alpha, i64 N);

/// v(alpha) = M(p^alpha, N) p^alpha / phi(p^alpha)^4.
double local_density(u64 p, unsigned alpha, i64 N);

/// A(q, N) = Y(q) / phi(q)^4 through the complete exponential sums.
double a_term(u64 q, i64 N);

/// A(q, N) rebuilt from local counts at prime powers and multiplicativity.
/// Independent of every exponential sum; q <= 1e3.
double a_term_local(u64 q, i64 N);

struct LocalFactor {
  u64 prime = 0;
  double value = 0.0;
  unsigned depth = 0;         // last alpha evaluated
  bool stabilized = false;
  bool lifted = false;        // stabilization taken from Hensel lifting (p > 5)
  bool obstruction = false;   // value clamped to zero
  std::vector<double> approximations;  // v(1), v(2), ...
};

/// s(p, N) as the stabilized value of v(alpha). Consecutive values within
/// 1e-12 stop the iteration; for p > 5 every k-th power map is étale mod p so
/// v(alpha) = v(1) for all alpha, which is used once p^alpha leaves the
/// local-count range.
LocalFactor s_factor(u64 p, i64 N);

struct TailBlock {
  u64 lower;  // exclusive
  u64 upper;  // inclusive
  double abs_sum;
};

struct SeriesProfile {
  i64 N = 0;
  u64 q_limit = 0;
  std::vector<double> a_values;  // a_values[q] = A(q, N) for 1 <= q <= q_limit; index 0 unused
  std::vector<LocalFactor> s_factors;
  double partial_sum = 0.0;
  double product = 1.0;
  std::vector<TailBlock> tail_blocks;
  bool anomalous = false;
};

/// A(q, N) for all q <= q_max: prime powers through exponential sums, the
/// rest through multiplicativity.
std::vector<double> a_values_upto(i64 N, u64 q_max);

/// sum_{Q < q <= 2Q} |A(q, N)| for each Q.
std::vector<TailBlock> tail_blocks(i64 N, std::span<const u64> block_starts);

/// Truncated singular series data for one N. Tail blocks start at P, 2P, ...,
/// 16P. Throws std::logic_error if the local-count and exponential-sum routes
/// disagree at any prime.
SeriesProfile series_profile(i64 N, u64 P);

}  // namespace wgql
