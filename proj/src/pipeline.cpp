#include "ridgelab/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "ridgelab/error.hpp"

namespace ridgelab {

double PipelineConfig::effective_min_cycles() const {
    return min_cycles ? *min_cycles : default_min_cycles(wavelet());
}

void PipelineConfig::validate(double dt) const {
    if (!(beta > 0.0) || !(gamma > 0.0) || !std::isfinite(beta) || !std::isfinite(gamma)) {
        throw ArgumentError("beta and gamma must be positive");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ArgumentError("sample interval must be positive");
    }
    if (!(freq_min > 0.0) || !(freq_min < freq_max) || !(freq_max < std::numbers::pi)) {
        throw ArgumentError("frequencies must satisfy 0 < freq_min < freq_max < pi (radians per sample)");
    }
    if (voices_per_octave < 2) {
        throw ArgumentError("voices_per_octave must be at least 2");
    }
    if (min_cycles && !(*min_cycles >= 0.0)) {
        throw ArgumentError("min_cycles must be non-negative");
    }
    if (!(max_jump > 0.0)) {
        throw ArgumentError("max_jump must be positive");
    }
    if (!(edge_alpha >= 0.0 && edge_alpha < 1.0)) {
        throw ArgumentError("edge_alpha must lie in [0, 1)");
    }
    if (edge_alpha > 0.0 && !(beta > 0.5)) {
        throw ArgumentError("edge masking needs beta > 1/2 (finite time support)");
    }
    if (truncation < 1 || truncation > 8) {
        throw ArgumentError("truncation must lie in [1, 8]");
    }
}

nlohmann::json to_json(const PipelineConfig& c) {
    nlohmann::json j;
    j["beta"] = c.beta;
    j["gamma"] = c.gamma;
    j["freq_min"] = c.freq_min;
    j["freq_max"] = c.freq_max;
    j["voices_per_octave"] = c.voices_per_octave;
    j["ridge_kind"] = to_string(c.ridge_kind);
    j["min_cycles"] = c.effective_min_cycles();
    j["max_jump"] = c.max_jump;
    j["edge_alpha"] = c.edge_alpha;
    j["truncation"] = c.truncation;
    return j;
}

PipelineConfig config_from_json(const nlohmann::json& j, PipelineConfig base) {
    if (!j.is_object()) {
        throw ArgumentError("configuration must be a JSON object");
    }
    auto number = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number()) {
            throw ArgumentError("configuration key '" + key + "' must be a number");
        }
        return v.get<double>();
    };
    auto integer = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number_integer()) {
            throw ArgumentError("configuration key '" + key + "' must be an integer");
        }
        return v.get<long long>();
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "beta") {
            base.beta = number(value, key);
        } else if (key == "gamma") {
            base.gamma = number(value, key);
        } else if (key == "freq_min") {
            base.freq_min = number(value, key);
        } else if (key == "freq_max") {
            base.freq_max = number(value, key);
        } else if (key == "voices_per_octave") {
            base.voices_per_octave = static_cast<int>(integer(value, key));
        } else if (key == "ridge_kind") {
            if (!value.is_string()) {
                throw ArgumentError("configuration key 'ridge_kind' must be a string");
            }
            base.ridge_kind = parse_ridge_kind(value.get<std::string>());
        } else if (key == "min_cycles") {
            base.min_cycles = number(value, key);
        } else if (key == "max_jump") {
            base.max_jump = number(value, key);
        } else if (key == "edge_alpha") {
            base.edge_alpha = number(value, key);
        } else if (key == "truncation") {
            base.truncation = static_cast<int>(integer(value, key));
        } else if (key == "threads") {
            base.threads = static_cast<unsigned>(integer(value, key));
        } else {
            throw ArgumentError("unknown configuration key '" + key + "'");
        }
    }
    return base;
}

std::uint64_t config_hash(const PipelineConfig& config) {
    const std::string text = to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash_hex(const PipelineConfig& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    return buf;
}

PipelineResult run_pipeline(std::span<const double> x, double dt, const PipelineConfig& config) {
    config.validate(dt);
    const MorseWavelet w = config.wavelet();
    const ScaleGrid grid =
        make_scale_grid(w, config.freq_min / dt, config.freq_max / dt, config.voices_per_octave);
    TransformOptions options;
    options.edge_alpha = config.edge_alpha;
    options.threads = config.threads;

    PipelineResult r;
    r.analysis = analyze_transform(x, dt, w, grid, options);
    r.points = detect_ridge_points(r.analysis, config.ridge_kind);
    ChainOptions chain;
    chain.max_jump = config.max_jump;
    chain.min_cycles = config.effective_min_cycles();
    r.curves = chain_ridges(r.points, grid, dt, chain);
    for (const auto& curve : r.curves) {
        r.estimates.push_back(estimate_along_ridge(curve, dt));
    }
    return r;
}

}  // namespace ridgelab
