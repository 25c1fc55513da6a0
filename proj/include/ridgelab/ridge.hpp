#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ridgelab/awt.hpp"

namespace ridgelab {

enum class RidgeKind { amplitude, phase };

std::string to_string(RidgeKind kind);
/// Parses "amplitude" or "phase"; ArgumentError otherwise.
RidgeKind parse_ridge_kind(const std::string& text);

/// A ridge point with the transform fields interpolated to its scale.
struct RidgePoint {
    std::size_t time_index = 0;
    double scale = 0.0;
    double grid_position = 0.0;  // fractional column index
    cdouble value;               // W at the refined scale
    double omega = 0.0;          // Ω
    double upsilon = 0.0;        // Υ
    cdouble p2;                  // P̃₂
    bool p2_valid = false;
    RidgeKind kind = RidgeKind::amplitude;
};

struct RidgeCurve {
    RidgeKind kind = RidgeKind::amplitude;
    std::vector<RidgePoint> points;  // consecutive time indices
    double length_cycles = 0.0;      // sum of Ω dt / 2π along the curve
};

/// Everything the ridge and diagnostics stages need from the transform.
struct TransformAnalysis {
    TransformBundle bundle;
    TransformMoments moments;

    const Scalogram& scalogram() const { return bundle.scalogram; }
};

TransformAnalysis analyze_transform(std::span<const double> x, double dt, const MorseWavelet& w,
                                    const ScaleGrid& grid, const TransformOptions& options = {});

/// Sign changes across adjacent scales of Re{V/W} (+ to -, amplitude) or of
/// Ω - ω_ψ/s (- to +, phase), refined by a Lagrange interpolant in ln s over up
/// to four neighbouring columns. Entries masked in the moments are skipped.
std::vector<RidgePoint> detect_ridge_points(const TransformAnalysis& analysis, RidgeKind kind);

inline constexpr double kDefaultMaxJump = 1.5;

struct ChainOptions {
    /// Largest step in ln s between consecutive points, in units of the mean
    /// log-scale spacing of the grid.
    double max_jump = kDefaultMaxJump;
    /// Curves shorter than this many cycles are dropped.
    double min_cycles = 0.0;
};

/// Greedy nearest-neighbour chaining in ln s across consecutive time indices;
/// ties go to the larger |W|.
std::vector<RidgeCurve> chain_ridges(const std::vector<RidgePoint>& points, const ScaleGrid& grid,
                                     double dt, const ChainOptions& options);

/// Default min_cycles: 2P cycles.
double default_min_cycles(const MorseWavelet& w);

struct RidgeEstimate {
    std::vector<std::size_t> time_index;
    std::vector<double> time;
    std::vector<cdouble> x_hat;
    std::vector<double> a_hat;
    std::vector<double> phi_hat;  // unwrapped along the curve
    std::vector<double> omega_hat;
    std::vector<double> upsilon_hat;
    std::vector<cdouble> rho2_hat;
    std::vector<std::uint8_t> rho2_valid;
    std::vector<double> scale;
};

/// Throws ArgumentError for an empty curve.
RidgeEstimate estimate_along_ridge(const RidgeCurve& curve, double dt);

}  // namespace ridgelab
