#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "ridgelab/ridge.hpp"

namespace ridgelab {

/// End-to-end analysis settings. Frequencies are in radians per sample.
struct PipelineConfig {
    double beta = 3.0;
    double gamma = 3.0;
    double freq_min = 2.0 * std::numbers::pi / 512.0;
    double freq_max = std::numbers::pi / 2.0;
    int voices_per_octave = kDefaultVoicesPerOctave;
    RidgeKind ridge_kind = RidgeKind::amplitude;
    std::optional<double> min_cycles;  // unset: 2P
    double max_jump = kDefaultMaxJump;
    double edge_alpha = kDefaultEdgeAlpha;
    int truncation = 2;
    unsigned threads = 0;

    MorseWavelet wavelet() const { return MorseWavelet(beta, gamma); }
    double effective_min_cycles() const;
    /// Throws ArgumentError when a field is out of range; dt is the sample interval.
    void validate(double dt) const;
};

nlohmann::json to_json(const PipelineConfig& config);
/// Reads the recognised keys of a JSON object onto base; unknown keys and
/// wrongly typed values are ArgumentErrors.
PipelineConfig config_from_json(const nlohmann::json& j, PipelineConfig base = {});

/// 64-bit FNV-1a of the canonical (sorted-key, compact) JSON form.
std::uint64_t config_hash(const PipelineConfig& config);
std::string config_hash_hex(const PipelineConfig& config);

struct PipelineResult {
    TransformAnalysis analysis;
    std::vector<RidgePoint> points;
    std::vector<RidgeCurve> curves;
    std::vector<RidgeEstimate> estimates;
};

PipelineResult run_pipeline(std::span<const double> x, double dt, const PipelineConfig& config);

}  // namespace ridgelab
