#include "wgql/series.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wgql/charsum.hpp"
#include "wgql/fft.hpp"
#include "wgql/parallel.hpp"
#include "wgql/summation.hpp"

namespace wgql {
namespace {

u64 reduce(i64 a, u64 q) {
  const i64 m = static_cast<i64>(q);
  const i64 r = a % m;
  return static_cast<u64>(r < 0 ? r + m : r);
}

bool is_prime_small(u64 p) {
  const auto f = factorize(p).factors;
  return f.size() == 1 && f[0].exponent == 1;
}

// Cyclic convolution mod q of two histograms, exact.
std::vector<u64> cyclic_convolve(const std::vector<u64>& a, const std::vector<u64>& b) {
  const u64 q = a.size();
  std::vector<u64> sa, sb;
  for (u64 i = 0; i < q; ++i) {
    if (a[i]) sa.push_back(i);
    if (b[i]) sb.push_back(i);
  }
  std::vector<u64> out(q, 0);
  const double direct_cost = static_cast<double>(sa.size()) * static_cast<double>(sb.size());
  const double fft_cost = 24.0 * static_cast<double>(q) * (std::log2(static_cast<double>(q)) + 1.0);
  if (direct_cost <= fft_cost) {
    for (u64 i : sa)
      for (u64 j : sb) {
        const u64 r = i + j >= q ? i + j - q : i + j;
        out[r] += a[i] * b[j];
      }
    return out;
  }
  std::vector<double> fa(a.begin(), a.end()), fb(b.begin(), b.end());
  const auto linear = fft::convolve(fa, fb);
  for (std::size_t i = 0; i < linear.size(); ++i) {
    const double v = std::round(linear[i]);
    if (std::abs(linear[i] - v) >= 0.25)
      throw std::logic_error("local_count: FFT convolution lost integrality");
    out[i % q] += static_cast<u64>(v);
  }
  return out;
}

// Y(q) for principal characters.
cplx principal_y(u64 q, i64 N) {
  const DirichletCharacter chi0 = principal_character(q);
  const std::array<DirichletCharacter, 4> chis{chi0, chi0, chi0, chi0};
  return z_sum(q, chis, N);
}

std::vector<u64> least_prime_factors(u64 limit) {
  std::vector<u64> lpf(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (lpf[i]) continue;
    for (u64 j = i; j <= limit; j += i)
      if (!lpf[j]) lpf[j] = i;
  }
  return lpf;
}

}  // namespace

u64 local_count(u64 p, unsigned alpha, i64 N) {
  if (alpha == 0) throw std::domain_error("local_count: alpha must be at least 1");
  if (p < 2 || p > kMaxLocalModulus || !is_prime_small(p)) throw std::domain_error("local_count: p must be prime");
  u64 q = 1;
  for (unsigned i = 0; i < alpha; ++i) {
    q *= p;
    if (q > kMaxLocalModulus) throw std::range_error("local_count: p^alpha exceeds 1e6");
  }

  std::array<std::vector<u64>, 4> hist;
  for (auto& h : hist) h.assign(q, 0);
  for (u64 l = 1; l < q; ++l) {
    if (l % p == 0) continue;
    u64 pw = l;
    for (unsigned k = 2; k <= 5; ++k) {
      pw = mul_mod(pw, l, q);
      ++hist[k - 2][pw];
    }
  }

  const auto pairs23 = cyclic_convolve(hist[0], hist[1]);
  const auto pairs45 = cyclic_convolve(hist[2], hist[3]);
  const u64 n = reduce(N, q);
  unsigned __int128 total = 0;
  for (u64 r = 0; r < q; ++r) {
    if (!pairs23[r]) continue;
    const u64 s = r <= n ? n - r : n + q - r;
    total += static_cast<unsigned __int128>(pairs23[r]) * pairs45[s];
  }
  if (total > std::numeric_limits<u64>::max()) throw std::range_error("local_count: count overflows 64 bits");
  return static_cast<u64>(total);
}

double local_density(u64 p, unsigned alpha, i64 N) {
  const long double q = std::pow(static_cast<long double>(p), alpha);
  const long double phi = q / p * (p - 1);
  return static_cast<double>(static_cast<long double>(local_count(p, alpha, N)) * q / (phi * phi * phi * phi));
}

double a_term(u64 q, i64 N) {
  if (q == 0) throw std::domain_error("a_term: q = 0");
  if (q > kMaxSeriesModulus) throw std::range_error("a_term: q exceeds 1e5");
  if (q == 1) return 1.0;
  const cplx y = principal_y(q, N);
  const double phi = static_cast<double>(euler_phi(q));
  const double phi4 = phi * phi * phi * phi;
  if (std::abs(y.imag()) / phi4 > 1e-9 * phi) {
    std::ostringstream msg;
    msg << "a_term: Y(" << q << ") has imaginary part " << y.imag() << " for N = " << N;
    throw std::logic_error(msg.str());
  }
  return y.real() / phi4;
}

double a_term_local(u64 q, i64 N) {
  if (q == 0) throw std::domain_error("a_term_local: q = 0");
  if (q > kMaxLocalReconstruction) throw std::range_error("a_term_local: q exceeds 1e3");
  double value = 1.0;
  for (const auto& [p, e] : factorize(q).factors) {
    const double previous = e == 1 ? 1.0 : local_density(p, e - 1, N);
    value *= local_density(p, e, N) - previous;
  }
  return value;
}

LocalFactor s_factor(u64 p, i64 N) {
  if (p > kMaxSeriesModulus) throw std::range_error("s_factor: p exceeds 1e5");
  if (p < 2 || !is_prime_small(p)) throw std::domain_error("s_factor: " + std::to_string(p) + " is not prime");

  LocalFactor out;
  out.prime = p;
  out.approximations.push_back(local_density(p, 1, N));
  out.depth = 1;
  u64 pa = p;
  for (unsigned alpha = 2; alpha <= kMaxLiftingDepth; ++alpha) {
    if (pa > kMaxLocalModulus / p) {
      if (p > 5) {
        out.stabilized = true;
        out.lifted = true;
      }
      break;
    }
    pa *= p;
    const double v = local_density(p, alpha, N);
    out.approximations.push_back(v);
    out.depth = alpha;
    if (std::abs(v - out.approximations[alpha - 2]) <= kStabilizationTolerance) {
      out.stabilized = true;
      break;
    }
  }
  out.value = out.approximations.back();
  if (out.value < kObstructionThreshold) {
    out.value = 0.0;
    out.obstruction = true;
  }
  return out;
}

std::vector<double> a_values_upto(i64 N, u64 q_max) {
  if (q_max == 0) return {0.0};
  const auto lpf = least_prime_factors(q_max);
  std::vector<u64> prime_powers;
  for (u64 q = 2; q <= q_max; ++q) {
    u64 m = q;
    const u64 p = lpf[q];
    while (m % p == 0) m /= p;
    if (m == 1) prime_powers.push_back(q);
  }
  std::vector<double> pp_values(prime_powers.size());
  parallel_for(prime_powers.size(), [&](std::size_t i) { pp_values[i] = a_term(prime_powers[i], N); });

  std::vector<double> a(q_max + 1, 0.0);
  a[1] = 1.0;
  for (std::size_t i = 0; i < prime_powers.size(); ++i) a[prime_powers[i]] = pp_values[i];
  for (u64 q = 2; q <= q_max; ++q) {
    const u64 p = lpf[q];
    u64 pe = 1, m = q;
    while (m % p == 0) {
      m /= p;
      pe *= p;
    }
    if (m != 1) a[q] = a[pe] * a[m];
  }
  return a;
}

std::vector<TailBlock> tail_blocks(i64 N, std::span<const u64> block_starts) {
  if (block_starts.empty()) return {};
  const u64 top = 2 * *std::max_element(block_starts.begin(), block_starts.end());
  const auto a = a_values_upto(N, top);
  std::vector<TailBlock> out;
  for (u64 Q : block_starts) {
    CompensatedSum s;
    for (u64 q = Q + 1; q <= 2 * Q; ++q) s += std::abs(a[q]);
    out.push_back({Q, 2 * Q, s.value()});
  }
  return out;
}

SeriesProfile series_profile(i64 N, u64 P) {
  if (P == 0) throw std::domain_error("series_profile: P must be at least 1");
  if (P > kMaxSeriesLimit) throw std::range_error("series_profile: P exceeds 1e4");

  SeriesProfile profile;
  profile.N = N;
  profile.q_limit = P;

  const std::array<u64, 5> starts{P, 2 * P, 4 * P, 8 * P, 16 * P};
  const auto a = a_values_upto(N, 32 * P);
  profile.a_values.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(P + 1));
  for (u64 Q : starts) {
    CompensatedSum s;
    for (u64 q = Q + 1; q <= 2 * Q; ++q) s += std::abs(a[q]);
    profile.tail_blocks.push_back({Q, 2 * Q, s.value()});
  }

  CompensatedSum partial;
  for (u64 q = 1; q <= P; ++q) partial += a[q];
  profile.partial_sum = partial.value();

  std::vector<u64> primes;
  if (P >= 2) {
    const PrimeTable table(P);
    primes.assign(table.primes().begin(), table.primes().end());
  }
  profile.s_factors.resize(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) { profile.s_factors[i] = s_factor(primes[i], N); });

  double product = 1.0;
  for (const auto& f : profile.s_factors) {
    const double via_sums = 1.0 + a[f.prime];
    if (std::abs(f.approximations.front() - via_sums) > 1e-6) {
      std::ostringstream msg;
      msg << "series_profile: local density " << f.approximations.front() << " and 1 + A(" << f.prime
          << ") = " << via_sums << " disagree for N = " << N;
      throw std::logic_error(msg.str());
    }
    if (f.value < 0.0 || !f.stabilized) profile.anomalous = true;
    product *= f.value;
  }
  profile.product = product;
  return profile;
}

}  // namespace wgql
