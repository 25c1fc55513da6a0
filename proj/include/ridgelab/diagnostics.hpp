#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ridgelab/analytic.hpp"
#include "ridgelab/morse.hpp"
#include "ridgelab/pipeline.hpp"

namespace ridgelab {

inline constexpr int kDefaultSuitabilityOrder = 10;

struct SuitabilityTerm {
    int order = 0;
    double value = 0.0;  // δ^⌊n/2⌋ |Ψ̃ₙ(ω_ψ)| / n!
    bool pass = false;
};

struct SuitabilityVerdict {
    double delta = 0.0;
    double duration = 0.0;
    double p_bound = 0.0;  // sqrt(2/δ)
    bool duration_pass = false;
    std::vector<SuitabilityTerm> per_order;
    bool overall = false;
};

/// Even orders use δ^(n/2), odd orders δ^((n-1)/2); each term passes when it
/// does not exceed one (allowing eight units of rounding, since the n = 2 term
/// equals one exactly at P = sqrt(2/δ)). Throws ArgumentError for δ <= 0 or
/// n_max < 2.
SuitabilityVerdict check_suitability(const MorseWavelet& w, double delta,
                                     int n_max = kDefaultSuitabilityOrder);

/// Predicted ridge scale curves ŝ(t) for amplitude and phase ridges.
struct RidgeCurvePrediction {
    std::vector<double> amplitude;
    std::vector<double> phase;
    Mask valid;
};

/// Needs moments with max_derivative >= 3 (ArgumentError otherwise).
RidgeCurvePrediction predict_ridge_curves(const AnalyticSignal& xa, const MorseWavelet& w);

struct BiasPrediction {
    std::vector<double> delta_a;       // relative amplitude deviation
    std::vector<double> delta_phi;     // radians
    std::vector<double> omega_bias;    // ω̂ - ω
    std::vector<double> upsilon_bias;  // υ̂ - υ
    std::vector<cdouble> leading;      // (x̂ - x)/x ≈ P² ρ̃₂ / 2
    std::vector<double> ridge_scale_amp;
    std::vector<double> ridge_scale_phase;
    Mask valid;
    double validity_delta = 0.0;  // stability level over the valid samples
    int validity_truncation = 0;
};

/// Pointwise perturbation predictions from the signal moments (max_derivative >= 3).
BiasPrediction predict_bias(const AnalyticSignal& xa, const MorseWavelet& w);

struct FidelityStatistics {
    bool success = false;
    std::string message;
    std::size_t samples = 0;
    double mean_dev2 = 0.0;
    double median_dev2 = 0.0;
    std::size_t ratio_samples = 0;
    double mean_ratio = 0.0;  // |ρ̂₂| relative to the 4/P⁴ bound
    double median_ratio = 0.0;
    std::string config_hash;
};

/// Treats Re{x̂} as a new signal, reruns the pipeline with the same settings
/// and compares the two estimates on their common times. A rerun without a
/// ridge yields success = false.
FidelityStatistics iterated_fidelity(const RidgeEstimate& estimate, double dt,
                                     const PipelineConfig& config);

/// Statistic |ρ̂₂| P⁴ / 4 over the samples of an estimate with valid ρ̂₂.
std::vector<double> fidelity_ratio(const RidgeEstimate& estimate, const MorseWavelet& w);

}  // namespace ridgelab
