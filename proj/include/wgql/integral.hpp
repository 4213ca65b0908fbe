#pragma once

#include <vector>

#include "wgql/arith.hpp"
#include "wgql/rational.hpp"

namespace wgql {

/// 1/2 + 1/3 + 1/4 + 1/5 - 1.
inline const Rational kMu = Rational(1, 2) + Rational(1, 3) + Rational(1, 4) + Rational(1, 5) - Rational(1);

inline constexpr i64 kMaxExactP0 = 1'000'000;

/// Which pairs of weight arrays are convolved first. Both orders must give the
/// same sum; the alternative order exists for that check.
enum class Pairing { adjacent, interleaved };

/// Sum over m2 + m3 + m4 + m5 = N, x / 2^(k+1) < m_k <= x, of prod m_k^(1/k - 1).
/// Building the two pair convolutions costs O(x log x); each lookup is O(x).
class SingularIntegralTable {
 public:
  explicit SingularIntegralTable(i64 x, Pairing pairing = Pairing::adjacent);

  i64 x() const { return x_; }
  double operator()(i64 N) const;
  /// Smallest attainable m2 + m3 + m4 + m5.
  i64 support_min() const { return support_min_; }

 private:
  i64 x_;
  i64 support_min_;
  i64 first_offset_;
  i64 second_offset_;
  std::vector<double> first_;   // first pair, index m - first_offset_
  std::vector<double> second_;  // second pair
};

double p0_exact(i64 N, i64 x, Pairing pairing = Pairing::adjacent);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// The continuous analogue: integral over u3, u4, u5 with u2 = N - u3 - u4 - u5
/// eliminated, each u_k in (x / 2^(k+1), x], of prod u_k^(1/k - 1).
QuadratureResult p0_continuous(i64 N, i64 x, double rel_tol = 1e-4);

struct MainTermReport {
  i64 N = 0;
  i64 x = 0;
  u64 P = 0;
  double p0 = 0.0;
  bool p0_exact_path = true;
  double series_product = 1.0;
  double main_term = 0.0;
  Rational mu = kMu;
  bool outside_window = false;  // N not in (x/2, x]
};

/// (1/120) P0 prod_{p <= P} s(p, N). P0 uses the exact path when x <= 1e6.
MainTermReport main_term(i64 N, i64 x, u64 P);
MainTermReport assemble_main_term(i64 N, i64 x, u64 P, double p0, double series_product, bool exact);

}  // namespace wgql
