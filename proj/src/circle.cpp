#include "wgql/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wgql/fft.hpp"
#include "wgql/integral.hpp"
#include "wgql/parallel.hpp"
#include "wgql/series.hpp"
#include "wgql/summation.hpp"

namespace wgql {
namespace {

constexpr u64 kBlockLength = u64{1} << 15;

void check_k(unsigned k) {
  if (k < 2 || k > 5) throw std::domain_error("exponent k must lie in {2,3,4,5}, got " + std::to_string(k));
}

u64 ipow(u64 n, unsigned k) {
  u64 r = 1;
  for (unsigned i = 0; i < k; ++i) r *= n;
  return r;
}

// e(n^k lambda) with lambda first reduced mod 1.
cplx phase(u64 nk, long double lambda) {
  long double t = static_cast<long double>(nk) * lambda;
  t -= std::floor(t);
  return unit_root(static_cast<double>(t));
}

long double reduce_lambda(double lambda) {
  long double r = lambda;
  return r - std::floor(r);
}

void require_table(const PrimeTable& table, u64 n, const char* what) {
  if (table.limit() < n)
    throw std::domain_error(std::string(what) + ": prime table limit " + std::to_string(table.limit()) +
                            " is below " + std::to_string(n));
}

struct Pair {
  u64 value;
  double weight;
};

// Weighted pairs n_a^ka + n_b^kb over the two windows (zero weights dropped).
std::vector<Pair> window_pairs(unsigned ka, unsigned kb, u64 x, const PrimeTable& table, CountMode mode) {
  const auto wa = power_window(ka, x), wb = power_window(kb, x);
  std::vector<Pair> out;
  if (wa.empty() || wb.empty()) return out;
  auto weight = [&](u64 n) {
    if (mode == CountMode::weighted) return table.von_mangoldt(n);
    return table.is_prime(n) ? 1.0 : 0.0;
  };
  for (u64 a = wa.n_min; a <= wa.n_max; ++a) {
    const double w1 = weight(a);
    if (w1 == 0.0) continue;
    for (u64 b = wb.n_min; b <= wb.n_max; ++b) {
      const double w2 = weight(b);
      if (w2 == 0.0) continue;
      out.push_back({ipow(a, ka) + ipow(b, kb), w1 * w2});
    }
  }
  std::sort(out.begin(), out.end(), [](const Pair& l, const Pair& r) { return l.value < r.value; });
  return out;
}

std::vector<Pair> prime_pairs(unsigned ka, unsigned kb, u64 n_max, const PrimeTable& table) {
  std::vector<Pair> out;
  for (u64 p : table.primes()) {
    const u64 pa = ipow(p, ka);
    if (pa >= n_max) break;
    for (u64 r : table.primes()) {
      const u64 rb = ipow(r, kb);
      if (pa + rb > n_max) break;
      out.push_back({pa + rb, 1.0});
    }
  }
  std::sort(out.begin(), out.end(), [](const Pair& l, const Pair& r) { return l.value < r.value; });
  return out;
}

// out[N] = sum over a + b = N of weight products, N <= n_max. Output blocks
// are independent, and within a block the accumulation order is fixed.
std::vector<double> sparse_convolve(const std::vector<Pair>& a, const std::vector<Pair>& b, u64 n_max) {
  std::vector<double> out(n_max + 1, 0.0);
  const std::size_t blocks = n_max / kBlockLength + 1;
  parallel_for(blocks, [&](std::size_t blk) {
    const u64 lo = blk * kBlockLength;
    const u64 hi = std::min(n_max, lo + kBlockLength - 1);
    std::vector<CompensatedSum> acc(hi - lo + 1);
    for (const Pair& pb : b) {
      if (pb.value > hi) break;
      const u64 from = lo > pb.value ? lo - pb.value : 0;
      const u64 to = hi - pb.value;
      auto it = std::lower_bound(a.begin(), a.end(), from, [](const Pair& p, u64 v) { return p.value < v; });
      for (; it != a.end() && it->value <= to; ++it) acc[it->value + pb.value - lo] += it->weight * pb.weight;
    }
    for (u64 n = lo; n <= hi; ++n) out[n] = acc[n - lo].value();
  });
  return out;
}

}  // namespace

PowerWindow power_window(unsigned k, u64 x) {
  check_k(k);
  PowerWindow w;
  w.k = k;
  w.x = x;
  if (x < (u64{1} << (k + 1))) {
    w.degenerate = true;
    return w;
  }
  w.n_min = integer_root(x >> (k + 1), k) + 1;
  w.n_max = integer_root(x, k);
  return w;
}

cplx t_sum(unsigned k, double lambda, u64 x) {
  const auto w = power_window(k, x);
  if (w.empty()) throw std::domain_error("t_sum: empty window");
  const long double lr = reduce_lambda(lambda);
  CompensatedComplexSum s;
  for (u64 n = w.n_min; n <= w.n_max; ++n) s += phase(ipow(n, k), lr);
  return s.value();
}

cplx t_sum_smoothed(unsigned k, double lambda, u64 x) {
  check_k(k);
  const u64 lo = (x >> (k + 1)) + 1;
  if (lo > x) return {};
  const long double lr = reduce_lambda(lambda);
  const double e = 1.0 / k - 1.0;
  constexpr u64 kResync = 512;
  CompensatedComplexSum s;
  const cplx step = phase(1, lr);
  cplx z{};
  for (u64 m = lo; m <= x; ++m) {
    if ((m - lo) % kResync == 0) z = phase(m, lr);
    s += std::pow(static_cast<double>(m), e) * z;
    z *= step;
  }
  return s.value() / static_cast<double>(k);
}

cplx s_sum(unsigned k, double lambda, u64 x, const PrimeTable& table) {
  const auto w = power_window(k, x);
  if (w.empty()) throw std::domain_error("s_sum: empty window");
  require_table(table, w.n_max, "s_sum");
  const long double lr = reduce_lambda(lambda);
  CompensatedComplexSum s;
  for (u64 n = w.n_min; n <= w.n_max; ++n) {
    const double lam = table.von_mangoldt(n);
    if (lam != 0.0) s += lam * phase(ipow(n, k), lr);
  }
  return s.value();
}

cplx w_sum(unsigned k, double lambda, const DirichletCharacter& chi, u64 x, const PrimeTable& table) {
  const auto w = power_window(k, x);
  if (w.empty()) throw std::domain_error("w_sum: empty window");
  require_table(table, w.n_max, "w_sum");
  const long double lr = reduce_lambda(lambda);
  CompensatedComplexSum s;
  for (u64 n = w.n_min; n <= w.n_max; ++n) {
    const double lam = table.von_mangoldt(n);
    if (lam == 0.0) continue;
    const cplx c = chi.values[n % chi.modulus];
    if (c != cplx{}) s += lam * c * phase(ipow(n, k), lr);
  }
  cplx out = s.value();
  if (chi.is_principal) out -= t_sum(k, lambda, x);
  return out;
}

double ArcPartition::major_measure() const {
  CompensatedSum s;
  for (const auto& arc : arcs) s += 2.0 / (static_cast<double>(Q) * static_cast<double>(arc.q));
  return s.value();
}

ArcPartition arc_partition(u64 P, u64 Q, bool allow_overlap) {
  if (P == 0 || Q == 0) throw std::domain_error("arc_partition: P and Q must be positive");
  if (!allow_overlap && static_cast<unsigned __int128>(Q) <= 2 * static_cast<unsigned __int128>(P) * P) {
    std::ostringstream msg;
    msg << "arc_partition: Q = " << Q << " must exceed 2 P^2 = " << 2 * P * P;
    throw std::domain_error(msg.str());
  }
  ArcPartition out;
  out.P = P;
  out.Q = Q;
  out.diagnostic = allow_overlap;
  for (u64 q = 1; q <= P; ++q)
    for (u64 a = 1; a <= q; ++a)
      if (std::gcd(a, q) == 1)
        out.arcs.push_back({a, q, Rational(static_cast<i64>(a), static_cast<i64>(q)),
                            Rational(1, static_cast<i64>(Q * q))});
  if (allow_overlap) return out;

  // Closed arcs around a/q and b/r meet iff Q |a r - b q| <= q + r.
  std::vector<const Arc*> sorted;
  for (const auto& arc : out.arcs) sorted.push_back(&arc);
  std::sort(sorted.begin(), sorted.end(), [](const Arc* l, const Arc* r) {
    return static_cast<unsigned __int128>(l->a) * r->q < static_cast<unsigned __int128>(r->a) * l->q;
  });
  auto check = [&](const Arc& l, const Arc& r, u64 shift) {
    const __int128 gap = static_cast<__int128>(r.a + shift * r.q) * l.q - static_cast<__int128>(l.a) * r.q;
    if (static_cast<__int128>(Q) * gap <= static_cast<__int128>(l.q + r.q)) {
      std::ostringstream msg;
      msg << "arc_partition: arcs " << l.a << "/" << l.q << " and " << r.a << "/" << r.q << " overlap";
      throw std::domain_error(msg.str());
    }
  };
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) check(*sorted[i], *sorted[i + 1], 0);
  if (sorted.size() > 1) check(*sorted.back(), *sorted.front(), 1);
  return out;
}

ArcLocation classify_alpha(double alpha, const ArcPartition& partition) {
  const long double Q = static_cast<long double>(partition.Q);
  const long double a = alpha;
  if (!(a >= 1.0L / Q && a < 1.0L + 1.0L / Q))
    throw std::domain_error("classify_alpha: alpha outside [1/Q, 1 + 1/Q)");
  constexpr long double kSlack = 1e-12L;
  const long double reach = (1.0L + kSlack) / Q;  // half width scaled by q
  for (u64 q = 1; q <= partition.P; ++q) {
    const long double aq = a * static_cast<long double>(q);
    // overlapping (diagnostic) arcs can put several numerators in reach
    const long double lo = std::max(1.0L, std::ceil(aq - reach));
    const long double hi = std::min(static_cast<long double>(q), std::floor(aq + reach));
    ArcLocation best;
    long double best_gap = 0;
    for (long double c = lo; c <= hi; c += 1) {
      const u64 num = static_cast<u64>(c);
      if (std::gcd(num, q) != 1) continue;
      const long double gap = std::abs(aq - c);
      if (!best.major || gap < best_gap) {
        best = {true, num, q};
        best_gap = gap;
      }
    }
    if (best.major) return best;
  }
  return {};
}

RepresentationReport r_exact(i64 N, u64 x, const PrimeTable& table) {
  if (x > kMaxExactCountWindow) throw std::range_error("r_exact: x exceeds 1e9");
  if (N <= 0) throw std::domain_error("r_exact: N must be positive");
  const u64 n = static_cast<u64>(N);
  require_table(table, std::max(integer_root(x, 2), integer_root(n, 2)), "r_exact");

  RepresentationReport report;
  report.N = N;
  report.x = x;

  const std::array<PowerWindow, 4> w{power_window(2, x), power_window(3, x), power_window(4, x),
                                     power_window(5, x)};
  if (std::none_of(w.begin(), w.end(), [](const PowerWindow& pw) { return pw.empty(); })) {
    CompensatedSum weighted;
    for (u64 n5 = w[3].n_min; n5 <= w[3].n_max; ++n5) {
      const u64 v5 = ipow(n5, 5);
      if (v5 >= n) break;
      const double l5 = table.von_mangoldt(n5);
      if (l5 == 0.0) continue;
      for (u64 n4 = w[2].n_min; n4 <= w[2].n_max; ++n4) {
        const u64 v45 = v5 + ipow(n4, 4);
        if (v45 >= n) break;
        const double l4 = table.von_mangoldt(n4);
        if (l4 == 0.0) continue;
        for (u64 n3 = w[1].n_min; n3 <= w[1].n_max; ++n3) {
          const u64 v345 = v45 + ipow(n3, 3);
          if (v345 >= n) break;
          const double l3 = table.von_mangoldt(n3);
          if (l3 == 0.0) continue;
          const u64 rem = n - v345;
          const u64 n2 = integer_root(rem, 2);
          if (n2 * n2 != rem || !w[0].contains(n2)) continue;
          const double l2 = table.von_mangoldt(n2);
          if (l2 == 0.0) continue;
          weighted += l2 * l3 * l4 * l5;
          if (table.is_prime(n2) && table.is_prime(n3) && table.is_prime(n4) && table.is_prime(n5))
            ++report.unweighted_count;
        }
      }
    }
    report.weighted_count = weighted.value();
  }

  for (u64 p5 : table.primes()) {
    const u64 v5 = ipow(p5, 5);
    if (v5 >= n) break;
    for (u64 p4 : table.primes()) {
      const u64 v45 = v5 + ipow(p4, 4);
      if (v45 >= n) break;
      for (u64 p3 : table.primes()) {
        const u64 v345 = v45 + ipow(p3, 3);
        if (v345 >= n) break;
        const u64 rem = n - v345;
        const u64 p2 = integer_root(rem, 2);
        if (p2 * p2 != rem || !table.is_prime(p2)) continue;
        ++report.unconstrained_count;
        const PrimeQuadruple t{p2, p3, p4, p5};
        if (!report.witness || t < *report.witness) report.witness = t;
      }
    }
  }
  return report;
}

u64 RepresentationTable::count(u64 N) const {
  if (mode != CountMode::unweighted) throw std::logic_error("RepresentationTable::count: weighted table");
  const double v = (*this)[N];
  const double r = std::round(v);
  if (std::abs(v - r) >= 0.25) throw std::logic_error("RepresentationTable::count: non-integral entry");
  return static_cast<u64>(r);
}

RepresentationTable r_all(u64 x, const PrimeTable& table, CountMode mode) {
  if (x > kMaxTableWindow) throw std::range_error("r_all: x exceeds 1e7");
  require_table(table, integer_root(x, 2), "r_all");
  RepresentationTable out;
  out.x = x;
  out.mode = mode;
  const auto pairs23 = window_pairs(2, 3, x, table, mode);
  const auto pairs45 = window_pairs(4, 5, x, table, mode);
  out.values = sparse_convolve(pairs23, pairs45, 4 * x);
  return out;
}

std::vector<std::uint32_t> count_unconstrained_all(u64 n_max, const PrimeTable& table) {
  require_table(table, integer_root(n_max, 2), "count_unconstrained_all");
  const auto pairs23 = prime_pairs(2, 3, n_max, table);
  const auto pairs45 = prime_pairs(4, 5, n_max, table);
  const auto values = sparse_convolve(pairs23, pairs45, n_max);
  std::vector<std::uint32_t> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = static_cast<std::uint32_t>(std::llround(values[i]));
  return out;
}

std::optional<PrimeQuadruple> smallest_witness(i64 N, const PrimeTable& table) {
  if (N <= 0) return std::nullopt;
  const u64 n = static_cast<u64>(N);
  require_table(table, integer_root(n, 2), "smallest_witness");
  std::optional<PrimeQuadruple> best;
  for (u64 p5 : table.primes()) {
    const u64 v5 = ipow(p5, 5);
    if (v5 >= n) break;
    for (u64 p4 : table.primes()) {
      const u64 v45 = v5 + ipow(p4, 4);
      if (v45 >= n) break;
      for (u64 p3 : table.primes()) {
        const u64 v345 = v45 + ipow(p3, 3);
        if (v345 >= n) break;
        const u64 rem = n - v345;
        const u64 p2 = integer_root(rem, 2);
        if (p2 * p2 != rem || !table.is_prime(p2)) continue;
        const PrimeQuadruple t{p2, p3, p4, p5};
        if (!best || t < *best) best = t;
      }
    }
  }
  return best;
}

CircleGrid::CircleGrid(u64 x, u64 M, const PrimeTable& table) : x_(x), M_(M) {
  if (M <= 4 * x) throw std::domain_error("discrete_circle: grid size M must exceed 4x");
  require_table(table, integer_root(x, 2), "discrete_circle");
  product_.assign(M, cplx{1.0, 0.0});
  for (unsigned k = 2; k <= 5; ++k) {
    const auto w = power_window(k, x);
    std::vector<double> coeffs(x + 1, 0.0);
    if (!w.empty())
      for (u64 n = w.n_min; n <= w.n_max; ++n) coeffs[ipow(n, k)] = table.von_mangoldt(n);
    const auto grid = fft::exponential_sums_on_grid(coeffs, M);
    for (u64 j = 0; j < M; ++j) product_[j] *= grid[j];
  }
}

cplx CircleGrid::integral(i64 N) const {
  const std::vector<char> all(M_, 1);
  return integral(N, all);
}

cplx CircleGrid::integral(i64 N, std::span<const char> mask) const {
  if (mask.size() != M_) throw std::domain_error("CircleGrid::integral: mask size mismatch");
  const i64 m = static_cast<i64>(M_);
  const u64 n = static_cast<u64>(((N % m) + m) % m);
  CompensatedComplexSum s;
  for (u64 j = 0; j < M_; ++j) {
    if (!mask[j]) continue;
    const u64 t = mul_mod(n, j, M_);
    s += product_[j] * unit_root(t == 0 ? 0 : M_ - t, M_);
  }
  return s.value() / static_cast<double>(M_);
}

cplx discrete_circle(i64 N, u64 x, u64 M, const PrimeTable& table) {
  return CircleGrid(x, M, table).integral(N);
}

u64 default_grid_size(u64 x) {
  u64 M = 1;
  while (M <= 4 * x) M <<= 1;
  return M;
}

std::vector<char> major_arc_mask(const ArcPartition& partition, u64 M) {
  std::vector<char> mask(M, 0);
  const long double lower = 1.0L / static_cast<long double>(partition.Q);
  for (u64 j = 0; j < M; ++j) {
    long double alpha = static_cast<long double>(j) / static_cast<long double>(M);
    while (alpha < lower) alpha += 1.0L;
    mask[j] = classify_alpha(static_cast<double>(alpha), partition).major;
  }
  return mask;
}

double major_arc_share(i64 N, u64 x, const ArcPartition& partition, u64 M, const PrimeTable& table) {
  const CircleGrid grid(x, M, table);
  const double full = grid.integral(N).real();
  if (std::abs(full) < 1e-6) throw std::domain_error("major_arc_share: R(N) = 0");
  return grid.integral(N, major_arc_mask(partition, M)).real() / full;
}

ExceptionalScan scan_exceptional(u64 x_max, ScanMode mode, const PrimeTable& table, u64 window_x) {
  if (x_max > kMaxTableWindow) throw std::range_error("scan_exceptional: x_max exceeds 1e7");
  ExceptionalScan scan;
  scan.x_max = x_max;
  scan.mode = mode;
  scan.window_x = window_x;

  std::vector<std::uint32_t> counts;
  if (mode == ScanMode::unconstrained) {
    counts = count_unconstrained_all(x_max, table);
  } else {
    if (window_x == 0) throw std::domain_error("scan_exceptional: constrained mode needs a window x");
    const auto t = r_all(window_x, table, CountMode::unweighted);
    counts.assign(x_max + 1, 0);
    for (u64 n = 0; n <= x_max; ++n) counts[n] = static_cast<std::uint32_t>(t.count(n));
  }
  for (u64 n = 2; n <= x_max; n += 2)
    if (counts[n] == 0) scan.exceptional.push_back(n);

  for (u64 lower = 1; lower < x_max; lower *= 2)
    scan.blocks.push_back(exceptional_block(scan, lower, std::min(2 * lower, x_max)));
  return scan;
}

ScanBlock exceptional_block(const ExceptionalScan& scan, u64 lower, u64 upper) {
  if (upper > scan.x_max) throw std::domain_error("exceptional_block: block exceeds the scanned range");
  ScanBlock b{lower, upper};
  if (upper <= lower) return b;
  b.evens = upper / 2 - lower / 2;
  const auto& ex = scan.exceptional;
  b.exceptions = static_cast<u64>(std::upper_bound(ex.begin(), ex.end(), upper) -
                                  std::upper_bound(ex.begin(), ex.end(), lower));
  return b;
}

u64 default_prediction_limit(u64 x) {
  const double root = std::pow(static_cast<double>(x), 13.0 / 180.0);
  return std::max<u64>(1, std::min<u64>(200, static_cast<u64>(std::floor(root))));
}

std::vector<i64> sample_even(u64 x, std::size_t count, std::uint64_t seed) {
  u64 first = x / 2 + 1;
  if (first % 2) ++first;
  const u64 last = x % 2 ? x - 1 : x;
  const u64 available = last >= first ? (last - first) / 2 + 1 : 0;
  if (count > available) throw std::domain_error("sample_even: not enough even integers in (x/2, x]");
  std::mt19937_64 rng(seed);
  const u64 bound = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % available;
  std::set<i64> picked;
  while (picked.size() < count) {
    u64 r;
    do r = rng();
    while (r >= bound);
    picked.insert(static_cast<i64>(first + 2 * (r % available)));
  }
  return {picked.begin(), picked.end()};
}

PredictionSummary predict_at(u64 x, std::span<const i64> Ns, u64 P, const PrimeTable& table) {
  if (x > kMaxTableWindow) throw std::range_error("predict_vs_actual: x exceeds 1e7");
  PredictionSummary summary;
  summary.x = x;
  summary.P = P;
  summary.rows.resize(Ns.size());

  std::optional<SingularIntegralTable> p0_table;
  if (static_cast<i64>(x) <= kMaxExactP0) p0_table.emplace(static_cast<i64>(x));

  parallel_for(Ns.size(), [&](std::size_t i) {
    PredictionRow& row = summary.rows[i];
    row.N = Ns[i];
    row.weighted_count = r_exact(row.N, x, table).weighted_count;
    if (p0_table) {
      row.p0 = (*p0_table)(row.N);
    } else {
      const auto q = p0_continuous(row.N, static_cast<i64>(x));
      if (!q.converged) throw std::runtime_error("predict_vs_actual: singular integral did not converge");
      row.p0 = q.value;
    }
    row.series_product = series_profile(row.N, P).product;
    row.main_term = row.p0 * row.series_product / 120.0;
    if (row.main_term > 0.0) row.ratio = row.weighted_count / row.main_term;
  });

  std::vector<double> ratios;
  for (const auto& row : summary.rows)
    if (row.ratio) ratios.push_back(*row.ratio);
  summary.used = ratios.size();
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    summary.min = ratios.front();
    summary.max = ratios.back();
    const std::size_t n = ratios.size();
    summary.median = n % 2 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
    CompensatedSum s;
    for (double r : ratios) s += r;
    summary.mean = s.value() / static_cast<double>(n);
  }
  return summary;
}

PredictionSummary predict_vs_actual(u64 x, std::size_t sample_size, u64 P, const PrimeTable& table,
                                    std::uint64_t seed) {
  const auto Ns = sample_even(x, sample_size, seed);
  return predict_at(x, Ns, P, table);
}

Rational exponent_check() {
  const Rational exponent = Rational(1) - Rational(13, 180) / Rational(128);
  if (!(exponent == Rational(23027, 23040))) throw std::logic_error("exponent_check: got " + exponent.to_string());
  return exponent;
}

}  // namespace wgql
