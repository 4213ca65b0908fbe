#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wgql::fft {

/// Linear convolution of two real sequences (length a.size() + b.size() - 1).
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

/// Evaluates sum_m coeffs[m] e(m j / size) for every j in [0, size).
/// coeffs.size() must not exceed size.
std::vector<std::complex<double>> exponential_sums_on_grid(std::span<const double> coeffs, std::size_t size);

/// Inverse of exponential_sums_on_grid restricted to real output:
/// returns (1/size) sum_j values[j] e(-m j / size) for every m.
std::vector<std::complex<double>> coefficients_from_grid(std::span<const std::complex<double>> values);

}  // namespace wgql::fft
