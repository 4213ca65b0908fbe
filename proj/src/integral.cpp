#include "wgql/integral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "wgql/fft.hpp"
#include "wgql/series.hpp"
#include "wgql/summation.hpp"

namespace wgql {
namespace {

constexpr double kDirectConvolutionBudget = 4e7;

struct Weights {
  i64 lo;  // first admissible m
  std::vector<double> w;
};

Weights weights(unsigned k, i64 x) {
  const i64 lo = x / (i64{1} << (k + 1)) + 1;
  Weights out{lo, {}};
  if (lo > x) return out;
  out.w.resize(static_cast<std::size_t>(x - lo + 1));
  const double e = 1.0 / k - 1.0;
  for (i64 m = lo; m <= x; ++m) out.w[static_cast<std::size_t>(m - lo)] = std::pow(static_cast<double>(m), e);
  return out;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  if (static_cast<double>(a.size()) * static_cast<double>(b.size()) > kDirectConvolutionBudget) {
    auto out = fft::convolve(a, b);
    // Pair sums of positive weights are positive on the whole support.
    for (double& v : out) v = std::max(v, 0.0);
    return out;
  }
  std::vector<double> out(a.size() + b.size() - 1);
  for (std::size_t n = 0; n < out.size(); ++n) {
    const std::size_t i0 = n >= b.size() ? n - b.size() + 1 : 0;
    const std::size_t i1 = std::min(n, a.size() - 1);
    CompensatedSum s;
    for (std::size_t i = i0; i <= i1; ++i) s += a[i] * b[n - i];
    out[n] = s.value();
  }
  return out;
}

}  // namespace

SingularIntegralTable::SingularIntegralTable(i64 x, Pairing pairing) : x_(x) {
  if (x < 1) throw std::domain_error("p0: x must be positive");
  if (x > kMaxExactP0) throw std::range_error("p0_exact: x exceeds 1e6");
  std::array<Weights, 4> w{weights(2, x), weights(3, x), weights(4, x), weights(5, x)};
  support_min_ = w[0].lo + w[1].lo + w[2].lo + w[3].lo;
  const auto [a, b, c, d] = pairing == Pairing::adjacent ? std::array{0, 1, 2, 3} : std::array{0, 2, 1, 3};
  first_ = convolve(w[a].w, w[b].w);
  second_ = convolve(w[c].w, w[d].w);
  first_offset_ = w[a].lo + w[b].lo;
  second_offset_ = w[c].lo + w[d].lo;
}

double SingularIntegralTable::operator()(i64 N) const {
  if (N <= 0) throw std::domain_error("p0: N must be positive");
  if (N < support_min_ || N > 4 * x_ || first_.empty() || second_.empty()) return 0.0;
  const i64 first_len = static_cast<i64>(first_.size());
  const i64 second_len = static_cast<i64>(second_.size());
  // m indexes first_: N - first_offset_ - m must index second_.
  const i64 base = N - first_offset_ - second_offset_;
  const i64 m0 = std::max<i64>(0, base - (second_len - 1));
  const i64 m1 = std::min<i64>(first_len - 1, base);
  CompensatedSum s;
  for (i64 m = m0; m <= m1; ++m)
    s += first_[static_cast<std::size_t>(m)] * second_[static_cast<std::size_t>(base - m)];
  return s.value();
}

double p0_exact(i64 N, i64 x, Pairing pairing) {
  if (N <= 0) throw std::domain_error("p0_exact: N must be positive");
  if (N > 4 * x) return 0.0;
  return SingularIntegralTable(x, pairing)(N);
}

QuadratureResult p0_continuous(i64 N, i64 x_int, double rel_tol) {
  if (N <= 0) throw std::domain_error("p0_continuous: N must be positive");
  if (x_int < 1) throw std::domain_error("p0_continuous: x must be positive");
  QuadratureResult result;
  if (N > 4 * x_int) return result;

  using boost::math::quadrature::gauss_kronrod;
  using GK = gauss_kronrod<double, 15>;
  constexpr unsigned kDepth = 12;
  const double inner_tol = std::max(rel_tol * 1e-4, 1e-12);

  const double x = static_cast<double>(x_int);
  const double L2 = x / 8, L3 = x / 16, L4 = x / 32, L5 = x / 64, U = x;

  // Integrates f over [a, b] split at the given interior points.
  auto piecewise = [](auto&& f, double a, double b, std::vector<double> cuts, double tol, double* err) {
    double total = 0.0, total_err = 0.0;
    if (!(b > a)) {
      if (err) *err = 0.0;
      return 0.0;
    }
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double prev = a;
    for (double c : cuts) {
      if (c <= prev || c > b) continue;
      double e = 0.0;
      total += GK::integrate(f, prev, c, kDepth, tol, &e);
      total_err += e;
      prev = c;
    }
    if (err) *err = total_err;
    return total;
  };

  const std::array<double, 4> k3{L3 + L2, L3 + U, U + L2, 2 * U};
  std::vector<double> k34;
  for (double b : k3)
    for (double c : {L4, U}) k34.push_back(b + c);

  auto i3 = [&](double s) {
    const double a = std::max(L3, s - U), b = std::min(U, s - L2);
    if (!(b > a)) return 0.0;
    auto f = [s](double u3) { return std::pow(u3, -2.0 / 3.0) / std::sqrt(s - u3); };
    return GK::integrate(f, a, b, kDepth, inner_tol);
  };
  auto i34 = [&](double s) {
    const double a = std::max(L4, s - 2 * U), b = std::min(U, s - L2 - L3);
    if (!(b > a)) return 0.0;
    std::vector<double> cuts;
    for (double c : k3) cuts.push_back(s - c);
    auto f = [&](double u4) { return std::pow(u4, -0.75) * i3(s - u4); };
    return piecewise(f, a, b, cuts, inner_tol, nullptr);
  };

  const double a = std::max(L5, static_cast<double>(N) - 3 * U);
  const double b = std::min(U, static_cast<double>(N) - L2 - L3 - L4);
  std::vector<double> cuts;
  for (double c : k34) cuts.push_back(static_cast<double>(N) - c);
  auto outer = [&](double u5) { return std::pow(u5, -0.8) * i34(static_cast<double>(N) - u5); };
  double err = 0.0;
  result.value = piecewise(outer, a, b, cuts, rel_tol * 1e-2, &err);
  result.error = err;
  result.converged = !(result.error > rel_tol * std::abs(result.value));
  return result;
}

MainTermReport assemble_main_term(i64 N, i64 x, u64 P, double p0, double series_product, bool exact) {
  MainTermReport r;
  r.N = N;
  r.x = x;
  r.P = P;
  r.p0 = p0;
  r.p0_exact_path = exact;
  r.series_product = series_product;
  r.main_term = p0 * series_product / 120.0;
  r.outside_window = !(2 * N > x && N <= x);
  return r;
}

MainTermReport main_term(i64 N, i64 x, u64 P) {
  if (N <= 0) throw std::domain_error("main_term: N must be positive");
  const bool exact = x <= kMaxExactP0;
  double p0 = 0.0;
  if (exact) {
    p0 = p0_exact(N, x);
  } else {
    const auto q = p0_continuous(N, x);
    if (!q.converged)
      throw std::runtime_error("main_term: singular integral quadrature stalled at absolute error " +
                               std::to_string(q.error));
    p0 = q.value;
  }
  const double product = series_profile(N, P).product;
  return assemble_main_term(N, x, P, p0, product, exact);
}

}  // namespace wgql
