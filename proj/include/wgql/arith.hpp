#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace wgql {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u64 kMaxSieveLimit = u64{1} << 40;
inline constexpr std::size_t kDefaultSegmentLength = std::size_t{1} << 20;
inline constexpr u64 kMaxFactorizable = 100'000'000;

struct PrimePower {
  u64 prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes

  u64 product() const;
};

/// Primes up to an inclusive limit together with primality and
/// least-prime-factor access for every n <= limit. Immutable once built.
class PrimeTable {
 public:
  explicit PrimeTable(u64 limit, std::size_t segment_length = kDefaultSegmentLength);

  u64 limit() const { return limit_; }
  std::span<const u64> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  bool is_prime(u64 n) const;
  /// Least prime factor of n, for 2 <= n <= limit.
  u64 smallest_factor(u64 n) const;
  Factorization factorize(u64 n) const;
  /// log p if n = p^m, else 0.
  double von_mangoldt(u64 n) const;
  /// Lambda(n) for every n in [lo, hi]; index 0 corresponds to lo.
  std::vector<double> von_mangoldt_range(u64 lo, u64 hi) const;

 private:
  void check_range(u64 n, const char* what) const;

  u64 limit_;
  std::vector<u64> primes_;
  std::vector<std::uint64_t> odd_bits_;  // bit i <=> 2i+1 prime
};

PrimeTable sieve_primes(u64 limit);

/// Streams the primes of [lo, hi] in increasing order through visit. Memory is
/// bounded by the segment length plus the base primes up to sqrt(hi).
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& visit,
                    std::size_t segment_length = kDefaultSegmentLength);

double von_mangoldt(u64 n, const PrimeTable& table);

enum class ArithmeticKind { phi, mu, divisors };

/// Factorization of 1 <= n <= 1e8 through a shared table of primes up to 1e4.
Factorization factorize(u64 n);
i64 arithmetic_function(u64 n, ArithmeticKind kind);
u64 euler_phi(u64 n);
int moebius(u64 n);
u64 divisor_count(u64 n);
std::vector<u64> divisors(u64 n);

/// Least common multiple; throws std::range_error on 64-bit overflow.
u64 lcm_list(std::span<const u64> values);

/// floor(x^(1/k)) computed exactly.
u64 integer_root(u64 x, unsigned k);
/// base^exp, throwing std::range_error on overflow.
u64 checked_pow(u64 base, unsigned exp);
u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);

}  // namespace wgql
