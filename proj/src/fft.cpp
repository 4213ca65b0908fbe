#include "wgql/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace wgql::fft {
namespace {

// The FFTW planner is not thread safe; execution of distinct plans is.
std::mutex planner_mutex;

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using Buffer = std::unique_ptr<T[], FftwFree>;

template <class T>
Buffer<T> allocate(std::size_t n) {
  auto* raw = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
  if (raw == nullptr) throw std::bad_alloc();
  return Buffer<T>(raw);
}

std::size_t next_fast_size(std::size_t n) {
  std::size_t size = 1;
  while (size < n) size <<= 1;
  return size;
}

}  // namespace

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_fast_size(out_len);
  const std::size_t bins = n / 2 + 1;

  auto in_a = allocate<double>(n);
  auto in_b = allocate<double>(n);
  auto freq_a = allocate<fftw_complex>(bins);
  auto freq_b = allocate<fftw_complex>(bins);

  Plan forward_a, forward_b, backward;
  {
    std::lock_guard lock(planner_mutex);
    forward_a.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in_a.get(), freq_a.get(), FFTW_ESTIMATE));
    forward_b.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in_b.get(), freq_b.get(), FFTW_ESTIMATE));
    backward.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), freq_a.get(), in_a.get(), FFTW_ESTIMATE));
  }

  std::fill_n(in_a.get(), n, 0.0);
  std::fill_n(in_b.get(), n, 0.0);
  std::copy(a.begin(), a.end(), in_a.get());
  std::copy(b.begin(), b.end(), in_b.get());
  fftw_execute(forward_a.get());
  fftw_execute(forward_b.get());

  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < bins; ++i) {
    const double re = freq_a[i][0] * freq_b[i][0] - freq_a[i][1] * freq_b[i][1];
    const double im = freq_a[i][0] * freq_b[i][1] + freq_a[i][1] * freq_b[i][0];
    freq_a[i][0] = re * scale;
    freq_a[i][1] = im * scale;
  }
  fftw_execute(backward.get());
  return std::vector<double>(in_a.get(), in_a.get() + out_len);
}

std::vector<std::complex<double>> exponential_sums_on_grid(std::span<const double> coeffs, std::size_t size) {
  if (coeffs.size() > size) throw std::invalid_argument("exponential_sums_on_grid: grid smaller than support");
  auto buf = allocate<fftw_complex>(size);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan.reset(fftw_plan_dft_1d(static_cast<int>(size), buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
  }
  for (std::size_t i = 0; i < size; ++i) {
    buf[i][0] = i < coeffs.size() ? coeffs[i] : 0.0;
    buf[i][1] = 0.0;
  }
  fftw_execute(plan.get());
  std::vector<std::complex<double>> out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = {buf[i][0], buf[i][1]};
  return out;
}

std::vector<std::complex<double>> coefficients_from_grid(std::span<const std::complex<double>> values) {
  const std::size_t size = values.size();
  auto buf = allocate<fftw_complex>(size);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan.reset(fftw_plan_dft_1d(static_cast<int>(size), buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE));
  }
  for (std::size_t i = 0; i < size; ++i) {
    buf[i][0] = values[i].real();
    buf[i][1] = values[i].imag();
  }
  fftw_execute(plan.get());
  const double scale = 1.0 / static_cast<double>(size);
  std::vector<std::complex<double>> out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = {buf[i][0] * scale, buf[i][1] * scale};
  return out;
}

}  // namespace wgql::fft
