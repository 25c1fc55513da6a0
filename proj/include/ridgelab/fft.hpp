#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ridgelab::fft {

using cdouble = std::complex<double>;

// Unnormalized forward DFT: X_k = sum_j x_j exp(-2 pi i j k / n).
std::vector<cdouble> forward(std::span<const cdouble> x);
std::vector<cdouble> forward_real(std::span<const double> x);

// Unnormalized inverse DFT: x_j = sum_k X_k exp(+2 pi i j k / n).
// Callers divide by n themselves.
std::vector<cdouble> inverse(std::span<const cdouble> spectrum);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

// Angular frequency of DFT bin k for n samples spaced dt apart, folded to
// (-pi/dt, pi/dt]; the Nyquist bin maps to +pi/dt.
double bin_frequency(std::size_t k, std::size_t n, double dt);

}  // namespace ridgelab::fft
