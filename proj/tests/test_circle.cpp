#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "wgql/circle.hpp"

using namespace wgql;

namespace {

struct Windows {
  std::vector<u64> n[4];
};

Windows prime_windows(u64 x, const PrimeTable& table) {
  Windows w;
  for (unsigned k = 2; k <= 5; ++k) {
    const auto pw = power_window(k, x);
    for (u64 n = pw.n_min; n <= pw.n_max && !pw.empty(); ++n)
      if (table.is_prime(n)) w.n[k - 2].push_back(n);
  }
  return w;
}

}  // namespace

TEST_CASE("power windows") {
  const auto a = power_window(2, 64);
  CHECK(a.n_min == 3);
  CHECK(a.n_max == 8);
  const auto b = power_window(5, 64);
  CHECK(b.n_min == 2);
  CHECK(b.n_max == 2);
  const auto c = power_window(2, 4);
  CHECK(c.degenerate);
  CHECK(c.empty());
  // brute force the definition
  for (u64 x : {100u, 1000u, 4096u, 123'457u})
    for (unsigned k = 2; k <= 5; ++k) {
      const auto w = power_window(k, x);
      const double lo = static_cast<double>(x) / std::pow(2.0, k + 1);
      for (u64 n = 1; n <= 400; ++n) {
        const double v = std::pow(static_cast<double>(n), k);
        CHECK(w.contains(n) == (v > lo && v <= static_cast<double>(x)));
      }
    }
}

TEST_CASE("T, S and W sums") {
  CHECK(std::abs(t_sum(2, 0.0, 64) - cplx(6.0)) < 1e-12);
  CHECK(std::abs(t_sum(2, 1.0, 64) - t_sum(2, 0.0, 64)) < 1e-12);
  CHECK(std::abs(t_sum(3, 1.3, 10'000) - t_sum(3, 0.3, 10'000)) < 1e-9);

  const PrimeTable table(1000);
  CHECK(s_sum(2, 0.0, 64, table).real() == doctest::Approx(std::log(420.0)).epsilon(1e-12));
  for (unsigned k = 2; k <= 5; ++k) {
    const cplx s = s_sum(k, 0.0, 100'000, table);
    CHECK(s.real() > 0);
    CHECK(std::abs(s.imag()) < 1e-9);
  }

  const auto w0 = w_sum(2, 0.0, principal_character(1), 64, table);
  CHECK(w0.real() == doctest::Approx(std::log(420.0) - 6.0).epsilon(1e-12));

  const CharacterTable three(3);
  const auto chi = three.character(1);
  cplx direct = 0;
  for (u64 n = 3; n <= 8; ++n) direct += table.von_mangoldt(n) * chi(static_cast<i64>(n));
  CHECK(std::abs(w_sum(2, 0.0, chi, 64, table) - direct) < 1e-12);

  // direct S_k at an irrational frequency
  const double lambda = std::numbers::sqrt2 - 1.0;
  const auto win = power_window(3, 100'000);
  cplx ref = 0;
  for (u64 n = win.n_min; n <= win.n_max; ++n) {
    const double t = std::fmod(static_cast<double>(n * n * n) * lambda, 1.0);
    ref += table.von_mangoldt(n) * std::polar(1.0, 2 * std::numbers::pi * t);
  }
  CHECK(std::abs(s_sum(3, lambda, 100'000, table) - ref) < 1e-6);

  CHECK_THROWS_AS(t_sum(2, 0.0, 4), std::domain_error);
  CHECK_THROWS_AS(s_sum(2, 0.0, 10'000'000, table), std::domain_error);
}

TEST_CASE("smoothed T sum") {
  for (unsigned k = 2; k <= 5; ++k)
    for (double lambda : {0.0, 3e-7, -1e-6}) {
      const u64 x = 20'000;
      cplx ref = 0;
      for (u64 m = x / (u64{1} << (k + 1)) + 1; m <= x; ++m)
        ref += std::pow(static_cast<double>(m), 1.0 / k - 1.0) *
               std::polar(1.0, 2 * std::numbers::pi * lambda * static_cast<double>(m));
      ref /= static_cast<double>(k);
      CHECK(std::abs(t_sum_smoothed(k, lambda, x) - ref) < 1e-9);
    }
}

TEST_CASE("arc partitions") {
  const auto one = arc_partition(1, 100);
  REQUIRE(one.arcs.size() == 1);
  CHECK(one.major_measure() == doctest::Approx(0.02));

  const auto three = arc_partition(3, 100);
  CHECK(three.arcs.size() == 4);
  CHECK(three.major_measure() == doctest::Approx(0.02 + 0.01 + 2.0 * 2.0 / 300.0));

  CHECK_THROWS_AS(arc_partition(3, 10), std::domain_error);
  CHECK(arc_partition(3, 10, true).diagnostic);

  // pairwise disjointness by brute force
  for (u64 P = 1; P <= 8; ++P) {
    const auto part = arc_partition(P, 2 * P * P + 1);
    for (std::size_t i = 0; i < part.arcs.size(); ++i)
      for (std::size_t j = i + 1; j < part.arcs.size(); ++j) {
        const auto& a = part.arcs[i];
        const auto& b = part.arcs[j];
        for (int shift : {-1, 0, 1}) {
          const Rational gap = a.center - b.center - Rational(shift);
          const Rational reach = a.half_width + b.half_width;
          const bool apart = gap.to_double() > reach.to_double() || -gap.to_double() > reach.to_double();
          CHECK(apart);
        }
      }
  }
}

TEST_CASE("classifying alpha") {
  const auto part = arc_partition(10, 10'000);
  const auto half = classify_alpha(0.5, part);
  CHECK(half.major);
  CHECK(half.a == 1);
  CHECK(half.q == 2);
  CHECK(classify_alpha(0.5 + 1.0 / (2.0 * 10'000), part).major);
  CHECK_FALSE(classify_alpha(0.5 + 1.0 / (2.0 * 10'000) + 1e-9, part).major);
  CHECK_FALSE(classify_alpha(std::numbers::phi - 1.0, part).major);
  const auto one = classify_alpha(1.00005, part);
  CHECK(one.major);
  CHECK(one.q == 1);
  CHECK_THROWS_AS(classify_alpha(0.0, part), std::domain_error);
  CHECK_THROWS_AS(classify_alpha(1.0 + 2.0 / 10'000, part), std::domain_error);
}

TEST_CASE("exact representation counts") {
  const PrimeTable table(1000);
  const auto sixty = r_exact(60, 64, table);
  CHECK(sixty.unconstrained_count == 1);
  REQUIRE(sixty.witness);
  CHECK(*sixty.witness == PrimeQuadruple{2, 2, 2, 2});
  CHECK(sixty.unweighted_count == 0);
  CHECK(sixty.weighted_count == 0.0);

  // N = 59 by brute force over all prime quadruples
  u64 brute = 0;
  for (u64 a : table.primes())
    for (u64 b : table.primes())
      for (u64 c : table.primes())
        for (u64 d : table.primes()) {
          if (a * a > 59 || b * b * b > 59 || c * c * c * c > 59 || d * d * d * d * d > 59) continue;
          brute += a * a + b * b * b + c * c * c * c + d * d * d * d * d == 59;
        }
  CHECK(r_exact(59, 64, table).unconstrained_count == brute);
  CHECK(smallest_witness(60, table) == sixty.witness);
  CHECK_FALSE(smallest_witness(2, table).has_value());

  CHECK_THROWS_AS(r_exact(60, kMaxExactCountWindow + 1, table), std::range_error);
  CHECK_THROWS_AS(r_exact(60, 10'000'000, table), std::domain_error);
}

TEST_CASE("table counts agree with direct counts") {
  const u64 x = 100'000;
  const PrimeTable table(1000);
  const auto unweighted = r_all(x, table, CountMode::unweighted);
  const auto weighted = r_all(x, table, CountMode::weighted);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<u64> pick(x / 4, 2 * x);
  for (int i = 0; i < 50; ++i) {
    const u64 N = pick(rng) * 2;
    const auto r = r_exact(static_cast<i64>(N), x, table);
    CAPTURE(N);
    CHECK(unweighted.count(N) == r.unweighted_count);
    CHECK(weighted[N] == doctest::Approx(r.weighted_count).epsilon(1e-9));
  }

  const auto w = prime_windows(x, table);
  double total = 0.0;
  for (double v : unweighted.values) total += v;
  CHECK(total == doctest::Approx(static_cast<double>(w.n[0].size() * w.n[1].size() * w.n[2].size() *
                                                     w.n[3].size())));
  CHECK_THROWS_AS(r_all(kMaxTableWindow + 1, PrimeTable(4000), CountMode::weighted), std::range_error);
}

TEST_CASE("unconstrained counts by quadruple loop") {
  const u64 limit = 20'000;
  const PrimeTable table(200);
  std::vector<std::uint32_t> brute(limit + 1, 0);
  for (u64 d : table.primes())
    for (u64 c : table.primes())
      for (u64 b : table.primes())
        for (u64 a : table.primes()) {
          const u64 s = a * a + b * b * b + c * c * c * c + d * d * d * d * d;
          if (s <= limit) ++brute[s];
        }
  CHECK(count_unconstrained_all(limit, table) == brute);
}

TEST_CASE("discrete circle integral") {
  const u64 x = 600;
  const u64 M = default_grid_size(x);
  CHECK(M == 4096);
  const PrimeTable table(100);
  const CircleGrid grid(x, M, table);
  for (i64 N : {300, 420, 444, 600, 1111, 2000}) {
    const double want = r_exact(N, x, table).weighted_count;
    CHECK(std::abs(grid.integral(N).real() - want) <= 1e-6 * std::max(1.0, want));
    CHECK(std::abs(grid.integral(N).imag()) <= 1e-6 * std::max(1.0, want));
  }
  CHECK(std::abs(grid.integral(4 * x + 1)) < 1e-8);
  CHECK(std::abs(discrete_circle(420, x, M, table) - grid.integral(420)) < 1e-12);
  CHECK_THROWS_AS(CircleGrid(x, 4 * x, table), std::domain_error);
}

TEST_CASE("major arc share") {
  const u64 x = 600;
  const PrimeTable table(100);
  const u64 M = default_grid_size(x);
  i64 N = 0;
  for (i64 n = 400; n <= 600; n += 2)
    if (r_exact(n, x, table).weighted_count > 0) {
      N = n;
      break;
    }
  REQUIRE(N > 0);
  const double full = major_arc_share(N, x, arc_partition(1, 1, true), M, table);
  CHECK(full == doctest::Approx(1.0).epsilon(1e-9));

  const auto mask1 = major_arc_mask(arc_partition(1, 64), M);
  const auto mask3 = major_arc_mask(arc_partition(3, 64), M);
  std::size_t c1 = 0, c3 = 0;
  for (std::size_t j = 0; j < M; ++j) {
    c1 += mask1[j] != 0;
    c3 += mask3[j] != 0;
    if (mask1[j]) CHECK(mask3[j]);
  }
  CHECK(c1 > 0);
  CHECK(c3 > c1);
  CHECK(c1 < M);

  const double part = major_arc_share(N, x, arc_partition(1, 64), M, table);
  CHECK(std::isfinite(part));
  CHECK(part != doctest::Approx(1.0));
}

TEST_CASE("exceptional scans") {
  const PrimeTable table(1000);
  const auto scan = scan_exceptional(20'000, ScanMode::unconstrained, table);
  const auto counts = count_unconstrained_all(20'000, table);
  std::vector<u64> want;
  for (u64 N = 2; N <= 20'000; N += 2)
    if (counts[N] == 0) want.push_back(N);
  CHECK(scan.exceptional == want);
  for (u64 N = 2; N < 60; N += 2) CHECK(std::binary_search(want.begin(), want.end(), N));

  const auto block = exceptional_block(scan, 10'000, 20'000);
  CHECK(block.evens == 5000);
  CHECK(block.exceptions == static_cast<u64>(std::count_if(want.begin(), want.end(), [](u64 n) { return n > 10'000; })));

  const u64 x = 10'000;
  const auto constrained = scan_exceptional(4 * x, ScanMode::constrained, table, x);
  const auto tab = r_all(x, table, CountMode::unweighted);
  std::vector<u64> want_c;
  for (u64 N = 2; N <= 4 * x; N += 2)
    if (tab.count(N) == 0) want_c.push_back(N);
  CHECK(constrained.exceptional == want_c);
}

TEST_CASE("sampling and prediction") {
  const auto a = sample_even(1'000'000, 50, 7);
  const auto b = sample_even(1'000'000, 50, 7);
  CHECK(a == b);
  CHECK(a.size() == 50);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
  for (i64 N : a) {
    CHECK(N % 2 == 0);
    CHECK(N > 500'000);
    CHECK(N <= 1'000'000);
  }
  CHECK(sample_even(1'000'000, 50, 8) != a);

  const PrimeTable table(200);
  const std::vector<i64> Ns{30'001, 30'002, 35'000};
  const auto s = predict_at(40'000, Ns, 30, table);
  REQUIRE(s.rows.size() == 3);
  CHECK(s.rows[0].main_term == 0.0);
  CHECK_FALSE(s.rows[0].ratio.has_value());
  CHECK(s.used <= 2);
  CHECK(s.rows[1].weighted_count == r_exact(30'002, 40'000, table).weighted_count);
}

TEST_CASE("exponent") {
  CHECK(exponent_check() == Rational(23027, 23040));
  CHECK(Rational(1) - Rational(13, 180 * 128) == Rational(23027, 23040));
}
