#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ridgelab {

using cdouble = std::complex<double>;
using Mask = std::vector<std::uint8_t>;

inline constexpr int kDefaultMaxDerivative = 4;

/// Complex analytic signal together with its instantaneous moments.
///
/// make_analytic fills samples, amplitude and phase. instantaneous_moments
/// fills the remaining fields; eta_derivatives[n - 1] holds the n-th time
/// derivative of eta and derivative_valid[n] the validity of order n
/// (derivative_valid[0] belongs to omega, upsilon and eta).
struct AnalyticSignal {
    std::vector<cdouble> samples;
    double dt = 1.0;
    std::vector<double> amplitude;
    std::vector<double> phase;  // wrapped to (-pi, pi]
    Mask sample_valid;          // amplitude above the zero floor

    int max_derivative = 0;
    std::vector<double> omega;
    std::vector<double> upsilon;
    std::vector<cdouble> eta;
    std::vector<std::vector<cdouble>> eta_derivatives;
    std::vector<Mask> derivative_valid;

    std::size_t size() const { return samples.size(); }
};

/// Analytic signal of a real series: mean removed, reflected to a power of two,
/// negative frequencies zeroed and positive ones doubled (DC and Nyquist kept
/// once), then the padding stripped and the mean restored.
///
/// Throws ArgumentError for fewer than 16 samples, non-finite samples or
/// dt <= 0, and DegenerateSignalError when every sample is zero.
AnalyticSignal make_analytic(std::span<const double> x, double dt);

/// Wraps an already analytic complex series (amplitude and phase filled).
AnalyticSignal wrap_analytic(std::vector<cdouble> samples, double dt);

/// omega, upsilon, eta and eta^(1) ... eta^(K-1) by fourth-order central
/// differences of ln x. Each order drops two more samples at every boundary
/// and around every sample below the amplitude floor.
AnalyticSignal instantaneous_moments(AnalyticSignal xa, int max_derivative = kDefaultMaxDerivative);

/// rho[n][t] for n = 0 ... order, with rho[0] identically one; valid[n] marks
/// the samples where rho[n] could be formed.
struct ModulationFunctions {
    int order = 0;
    std::vector<std::vector<cdouble>> rho;
    std::vector<Mask> valid;
};

/// rho_n = B_n(upsilon/omega, i eta'/omega^2, ..., i eta^(n-1)/omega^n).
/// Needs moments of order >= n - 1 (ArgumentError otherwise). Samples with
/// |omega| < 1e-9 / dt are masked.
ModulationFunctions modulation_functions(const AnalyticSignal& xa, int order);

struct StabilityReport {
    double delta = 0.0;
    int truncation = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
    /// Entry 0 is sup |upsilon/omega|; entry n - 1 is (sup |eta^(n-1)/omega^n|)^(1/n).
    std::vector<double> per_order;
};

/// Stability level over the sample range [begin, end), using valid samples only.
/// Throws ArgumentError when the range holds no valid sample or the moments
/// stop short of order truncation - 1.
StabilityReport stability_level(const AnalyticSignal& xa, std::size_t begin, std::size_t end,
                                int truncation);

/// Fourth-order central first difference of a uniformly sampled series. The
/// first and last two entries and any entry whose stencil touches an invalid
/// input are marked invalid in out_valid (and set to zero).
std::vector<double> central_difference(std::span<const double> f, double dt,
                                       const Mask& in_valid, Mask& out_valid);
std::vector<cdouble> central_difference(std::span<const cdouble> f, double dt,
                                        const Mask& in_valid, Mask& out_valid);

}  // namespace ridgelab
