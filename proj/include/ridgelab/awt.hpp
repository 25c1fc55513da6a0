#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ridgelab/analytic.hpp"
#include "ridgelab/morse.hpp"

namespace ridgelab {

/// Dense row-major matrix; rows are times, columns are scales.
template <typename T>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, T fill = T{}) : rows(r), cols(c), data(r * c, fill) {}

    T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

using ComplexMatrix = Matrix<cdouble>;
using RealMatrix = Matrix<double>;
using MaskMatrix = Matrix<std::uint8_t>;

/// Strictly increasing positive scales.
struct ScaleGrid {
    std::vector<double> scales;

    std::size_t size() const { return scales.size(); }
    /// Radian frequency ω_ψ/s of each scale.
    std::vector<double> frequencies(const MorseWavelet& w) const;
};

inline constexpr int kDefaultVoicesPerOctave = 8;
inline constexpr double kDefaultEdgeAlpha = 0.95;

/// Log-spaced scales s = ω_ψ/ω covering [freq_min, freq_max] (radians per unit
/// time) from the high-frequency end, voices_per_octave per doubling.
/// Throws ArgumentError unless 0 < freq_min < freq_max and voices >= 2.
ScaleGrid make_scale_grid(const MorseWavelet& w, double freq_min, double freq_max,
                          int voices_per_octave = kDefaultVoicesPerOctave);

/// Throws ArgumentError unless the scales are positive, finite, strictly increasing
/// and at least two in number.
void validate_scale_grid(const ScaleGrid& grid);

struct TransformOptions {
    /// Energy fraction defining the cone of influence; 0 disables edge masking.
    double edge_alpha = kDefaultEdgeAlpha;
    /// Worker threads for the per-scale loop; 0 means RIDGELAB_THREADS or the
    /// hardware concurrency.
    unsigned threads = 0;
};

struct Scalogram {
    ComplexMatrix values;  // W(t, s)
    ScaleGrid grid;
    MorseWavelet wavelet{3.0, 3.0};
    double dt = 1.0;
    double edge_alpha = kDefaultEdgeAlpha;
    MaskMatrix edge_mask;                  // 1 outside the cone of influence
    std::vector<std::string> scale_errors;  // empty string for usable scales

    std::size_t times() const { return values.rows; }
    std::size_t scales() const { return values.cols; }
    bool scale_ok(std::size_t c) const { return scale_errors[c].empty(); }
};

/// W together with U = (s/ω_ψ) ∂W/∂t and V = s ∂W/∂s from one signal FFT.
struct TransformBundle {
    Scalogram scalogram;
    ComplexMatrix u;
    ComplexMatrix v;
};

/// Frequency-domain analytic wavelet transform of a real series.
///
/// The series is reflected to a power of two, multiplied per scale by
/// Ψ(sω) on the non-negative frequencies and inverse transformed. Scales whose
/// response ω_ψ/s reaches the Nyquist frequency get an entry in scale_errors and
/// a zero column. Throws ArgumentError for invalid input.
Scalogram transform(std::span<const double> x, double dt, const MorseWavelet& w,
                    const ScaleGrid& grid, const TransformOptions& options = {});

/// Time derivative kernel i(sω/ω_ψ)Ψ(sω), so that ∂W/∂t = (ω_ψ/s) U.
ComplexMatrix transform_time_derivative(std::span<const double> x, double dt,
                                        const MorseWavelet& w, const ScaleGrid& grid,
                                        const TransformOptions& options = {});

/// Scale derivative kernel sωΨ'(sω), so that V = s ∂W/∂s.
ComplexMatrix transform_scale_derivative(std::span<const double> x, double dt,
                                         const MorseWavelet& w, const ScaleGrid& grid,
                                         const TransformOptions& options = {});

TransformBundle transform_with_derivatives(std::span<const double> x, double dt,
                                           const MorseWavelet& w, const ScaleGrid& grid,
                                           const TransformOptions& options = {});

/// Ω, Υ and P̃₂ on the time-scale plane.
///
/// valid marks entries with |W| >= 1e-8 max|W| inside the cone of influence;
/// p2_valid additionally requires the time-derivative stencil of Ω and Υ to
/// stay on valid entries.
struct TransformMoments {
    RealMatrix omega;
    RealMatrix upsilon;
    ComplexMatrix p2;
    MaskMatrix valid;
    MaskMatrix p2_valid;
};

TransformMoments transform_moments(const Scalogram& scalogram, const ComplexMatrix& u);

/// Number of leading (and trailing) samples masked at scale s.
std::size_t edge_margin(const EnergyProfile& profile, double alpha, double scale, double dt);

/// Thread count from RIDGELAB_THREADS, capped by the hardware concurrency.
unsigned default_thread_count();

}  // namespace ridgelab
