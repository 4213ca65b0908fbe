#include "wgql/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wgql {
namespace {

std::vector<u64> simple_sieve(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<char> composite(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

const PrimeTable& shared_small_table() {
  static const PrimeTable table(10'000);
  return table;
}

}  // namespace

u64 Factorization::product() const {
  u64 out = 1;
  for (const auto& f : factors) out *= checked_pow(f.prime, f.exponent);
  return out;
}

u64 integer_root(u64 x, unsigned k) {
  if (k == 0) throw std::domain_error("integer_root: k = 0");
  if (k == 1 || x < 2) return x;
  u64 r = static_cast<u64>(std::pow(static_cast<long double>(x), 1.0L / k));
  auto fits = [&](u64 c) {
    u64 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (__builtin_mul_overflow(acc, c, &acc)) return false;
    }
    return acc <= x;
  };
  while (r > 0 && !fits(r)) --r;
  while (fits(r + 1)) ++r;
  return r;
}

u64 checked_pow(u64 base, unsigned exp) {
  u64 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(acc, base, &acc)) throw std::range_error("checked_pow: overflow");
  }
  return acc;
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& visit, std::size_t segment_length) {
  if (hi > kMaxSieveLimit) throw std::range_error("for_each_prime: limit exceeds 2^40");
  if (segment_length == 0) throw std::domain_error("for_each_prime: empty segment");
  lo = std::max<u64>(lo, 2);
  if (lo > hi) return;

  const std::vector<u64> base = simple_sieve(integer_root(hi, 2));
  std::vector<char> segment(segment_length);
  for (u64 low = lo; low <= hi; low += segment_length) {
    const u64 high = std::min<u64>(hi, low + segment_length - 1);
    const std::size_t len = high - low + 1;
    std::fill_n(segment.begin(), len, 1);
    for (u64 p : base) {
      if (p * p > high) break;
      u64 start = std::max(p * p, (low + p - 1) / p * p);
      for (u64 j = start; j <= high; j += p) segment[j - low] = 0;
    }
    for (std::size_t i = 0; i < len; ++i)
      if (segment[i]) visit(low + i);
    if (high == hi) break;
  }
}

PrimeTable::PrimeTable(u64 limit, std::size_t segment_length) : limit_(limit) {
  if (limit < 2) throw std::domain_error("sieve_primes: limit must be at least 2");
  if (limit > kMaxSieveLimit) throw std::range_error("sieve_primes: limit exceeds 2^40");
  odd_bits_.assign(limit / 128 + 1, 0);
  for_each_prime(
      2, limit,
      [this](u64 p) {
        primes_.push_back(p);
        if (p & 1) odd_bits_[p >> 7] |= std::uint64_t{1} << ((p >> 1) & 63);
      },
      segment_length);
}

PrimeTable sieve_primes(u64 limit) { return PrimeTable(limit); }

void PrimeTable::check_range(u64 n, const char* what) const {
  if (n > limit_)
    throw std::domain_error(std::string(what) + ": " + std::to_string(n) + " exceeds table limit " +
                            std::to_string(limit_));
}

bool PrimeTable::is_prime(u64 n) const {
  check_range(n, "is_prime");
  if (n == 2) return true;
  if (n < 2 || (n & 1) == 0) return false;
  return (odd_bits_[n >> 7] >> ((n >> 1) & 63)) & 1;
}

u64 PrimeTable::smallest_factor(u64 n) const {
  if (n < 2) throw std::domain_error("smallest_factor: n must be at least 2");
  check_range(n, "smallest_factor");
  if ((n & 1) == 0) return 2;
  if (is_prime(n)) return n;
  for (u64 p : primes_) {
    if (p * p > n) break;
    if (n % p == 0) return p;
  }
  return n;
}

Factorization PrimeTable::factorize(u64 n) const {
  if (n == 0) throw std::domain_error("factorize: n = 0");
  Factorization out{n, {}};
  while (n > 1) {
    const u64 p = smallest_factor(n);
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  return out;
}

double PrimeTable::von_mangoldt(u64 n) const {
  if (n == 0) throw std::domain_error("von_mangoldt: n must be at least 1");
  check_range(n, "von_mangoldt");
  if (n == 1) return 0.0;
  const u64 p = smallest_factor(n);
  u64 m = n;
  while (m % p == 0) m /= p;
  return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

std::vector<double> PrimeTable::von_mangoldt_range(u64 lo, u64 hi) const {
  if (lo > hi) return {};
  check_range(hi, "von_mangoldt_range");
  if (lo == 0) throw std::domain_error("von_mangoldt_range: n must be at least 1");
  std::vector<double> out(hi - lo + 1);
  for (u64 n = lo; n <= hi; ++n) out[n - lo] = von_mangoldt(n);
  return out;
}

double von_mangoldt(u64 n, const PrimeTable& table) { return table.von_mangoldt(n); }

Factorization factorize(u64 n) {
  if (n == 0) throw std::domain_error("factorize: n = 0");
  if (n > kMaxFactorizable) throw std::range_error("factorize: n exceeds 1e8");
  Factorization out{n, {}};
  for (u64 p : shared_small_table().primes()) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (n > 1) out.factors.push_back({n, 1});
  return out;
}

u64 euler_phi(u64 n) {
  u64 phi = 1;
  for (const auto& [p, e] : factorize(n).factors) phi *= (p - 1) * checked_pow(p, e - 1);
  return phi;
}

int moebius(u64 n) {
  const auto f = factorize(n);
  for (const auto& pp : f.factors)
    if (pp.exponent > 1) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

u64 divisor_count(u64 n) {
  u64 d = 1;
  for (const auto& pp : factorize(n).factors) d *= pp.exponent + 1;
  return d;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : factorize(n).factors) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

i64 arithmetic_function(u64 n, ArithmeticKind kind) {
  if (n == 0) throw std::domain_error("arithmetic_function: n must be at least 1");
  switch (kind) {
    case ArithmeticKind::phi:
      return static_cast<i64>(euler_phi(n));
    case ArithmeticKind::mu:
      return moebius(n);
    case ArithmeticKind::divisors:
      return static_cast<i64>(divisor_count(n));
  }
  throw std::domain_error("arithmetic_function: unknown kind");
}

u64 lcm_list(std::span<const u64> values) {
  if (values.empty()) throw std::domain_error("lcm_list: empty list");
  u64 acc = 1;
  for (u64 v : values) {
    if (v == 0) throw std::domain_error("lcm_list: zero entry");
    const u64 g = std::gcd(acc, v);
    if (__builtin_mul_overflow(acc / g, v, &acc)) throw std::range_error("lcm_list: overflow");
  }
  return acc;
}

}  // namespace wgql
