#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wgql/arith.hpp"
#include "wgql/series.hpp"

using namespace wgql;

namespace {

u64 brute_local_count(u64 q, i64 N) {
  std::vector<u64> units;
  for (u64 l = 1; l <= q; ++l)
    if (std::gcd(l, q) == 1) units.push_back(l % q);
  const u64 target = static_cast<u64>(((N % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
  u64 count = 0;
  for (u64 a : units)
    for (u64 b : units)
      for (u64 c : units)
        for (u64 d : units) {
          const u64 s = (pow_mod(a, 2, q) + pow_mod(b, 3, q) + pow_mod(c, 4, q) + pow_mod(d, 5, q)) % q;
          count += s == target;
        }
  return count;
}

}  // namespace

TEST_CASE("local count examples") {
  CHECK(local_count(2, 1, 100) == 1);
  CHECK(local_count(2, 1, 101) == 0);
  CHECK(local_count(3, 1, 99) == 4);
  CHECK(local_count(2, 2, 100) == 8);
  CHECK(local_count(2, 3, 100) == 64);
  CHECK_THROWS_AS(local_count(1009, 2, 5), std::range_error);
  CHECK_THROWS_AS(local_count(4, 1, 5), std::domain_error);
}

TEST_CASE("local count against exhaustive enumeration") {
  for (u64 q : {2u, 4u, 8u, 16u, 32u, 3u, 9u, 27u, 5u, 25u, 7u, 49u, 11u, 13u, 17u}) {
    const auto f = factorize(q).factors.front();
    for (i64 N : {0, 1, 2, 3, 7, 30, 60, 101, 9999, 123456}) {
      CAPTURE(q);
      CAPTURE(N);
      CHECK(local_count(f.prime, f.exponent, N) == brute_local_count(q, N));
    }
  }
}

TEST_CASE("local density equals 1 plus the A(p^b) sum") {
  for (u64 p : {2u, 3u, 5u, 7u})
    for (i64 N : {2, 60, 1000, 31415, 999'999}) {
      double acc = 1.0;
      u64 pa = 1;
      for (unsigned alpha = 1; pa * p <= 20'000; ++alpha) {
        pa *= p;
        acc += a_term(pa, N);
        CAPTURE(pa);
        CAPTURE(N);
        CHECK(std::abs(local_density(p, alpha, N) - acc) <= 1e-9 * std::max(1.0, acc));
      }
    }
}

TEST_CASE("A(q) examples") {
  CHECK(a_term(1, 77) == 1.0);
  CHECK(a_term(2, 100) == doctest::Approx(1.0));
  CHECK(a_term(2, 101) == doctest::Approx(-1.0));
  CHECK(std::abs(a_term(4, 100)) < 1e-12);
  CHECK_THROWS_AS(a_term(0, 1), std::domain_error);
  CHECK_THROWS_AS(a_term(kMaxSeriesModulus + 1, 1), std::range_error);
}

TEST_CASE("exponential-sum and local-count routes agree for q <= 1000") {
  for (i64 N : {100, 4096, 77777}) {
    const auto table = a_values_upto(N, 1000);
    for (u64 q = 1; q <= 1000; ++q) {
      CAPTURE(q);
      CAPTURE(N);
      const double local = a_term_local(q, N);
      CHECK(std::abs(table[q] - local) <= 1e-9);
      if (q % 37 == 0) CHECK(std::abs(a_term(q, N) - local) <= 1e-9);
    }
  }
  CHECK_THROWS_AS(a_term_local(kMaxLocalReconstruction + 1, 1), std::range_error);
}

TEST_CASE("A is multiplicative on coprime moduli") {
  const i64 N = 123'456;
  for (u64 q1 = 2; q1 <= 60; q1 += 3)
    for (u64 q2 = 5; q2 <= 120; q2 += 11) {
      if (std::gcd(q1, q2) != 1) continue;
      CHECK(std::abs(a_term(q1 * q2, N) - a_term(q1, N) * a_term(q2, N)) <= 1e-9);
    }
}

TEST_CASE("local factors") {
  const auto even = s_factor(2, 1000);
  CHECK(even.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(even.stabilized);
  CHECK_FALSE(even.obstruction);

  const auto odd = s_factor(2, 1001);
  CHECK(odd.value == 0.0);
  CHECK(odd.obstruction);

  const auto three = s_factor(3, 999);
  REQUIRE(three.approximations.size() >= 2);
  CHECK(three.approximations[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(three.stabilized);

  CHECK_THROWS_AS(s_factor(9, 1), std::domain_error);
  CHECK_THROWS_AS(s_factor(1, 1), std::domain_error);
}

TEST_CASE("densities above 5 are flat in alpha") {
  const PrimeTable table(150);
  for (u64 p : table.primes()) {
    if (p <= 5) continue;
    for (i64 N : {1, 2, 500, 65'536, 999'983}) {
      CAPTURE(p);
      CAPTURE(N);
      CHECK(std::abs(local_density(p, 2, N) - local_density(p, 1, N)) <= 1e-12);
    }
  }
  CHECK(std::abs(local_density(997, 2, 31'416) - local_density(997, 1, 31'416)) <= 1e-12);
}

TEST_CASE("series profile") {
  const auto p1 = series_profile(100, 1);
  CHECK(p1.partial_sum == 1.0);
  CHECK(p1.product == 1.0);
  CHECK(p1.s_factors.empty());

  const auto p2 = series_profile(100, 2);
  CHECK(p2.partial_sum == doctest::Approx(2.0));
  CHECK(p2.product == doctest::Approx(2.0));

  const auto big = series_profile(10'000, 200);
  CHECK(std::abs(big.partial_sum - big.product) <= 0.05 * big.product);
  CHECK_FALSE(big.anomalous);
  REQUIRE(big.tail_blocks.size() == 5);
  const std::vector<u64> starts{200, 400};
  const auto blocks = tail_blocks(10'000, starts);
  CHECK(blocks[0].abs_sum == doctest::Approx(big.tail_blocks[0].abs_sum).epsilon(1e-12));
  CHECK(blocks[1].abs_sum == doctest::Approx(big.tail_blocks[1].abs_sum).epsilon(1e-12));

  const auto odd = series_profile(10'001, 50);
  CHECK(odd.product == 0.0);

  CHECK_THROWS_AS(series_profile(1, 0), std::domain_error);
  CHECK_THROWS_AS(series_profile(1, kMaxSeriesLimit + 1), std::range_error);
}
