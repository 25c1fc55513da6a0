#include "ridgelab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ridgelab/bellpoly.hpp"
#include "ridgelab/error.hpp"

namespace ridgelab {

namespace {

constexpr double kRoundingAllowance = 1.0 + 8.0 * std::numeric_limits<double>::epsilon();
constexpr double kOmegaFloor = 1e-9;

struct SecondOrderMoments {
    double omega, upsilon, d_omega, d_upsilon, dd_omega, dd_upsilon;
};

void require_moments(const AnalyticSignal& xa) {
    if (xa.max_derivative < 3 || xa.omega.size() != xa.size()) {
        throw ArgumentError("bias predictions need moments with max_derivative >= 3");
    }
}

bool usable(const AnalyticSignal& xa, std::size_t t) {
    return xa.derivative_valid[2][t] && std::abs(xa.omega[t]) >= kOmegaFloor / xa.dt;
}

SecondOrderMoments moments_at(const AnalyticSignal& xa, std::size_t t) {
    const cdouble d1 = xa.eta_derivatives[0][t];
    const cdouble d2 = xa.eta_derivatives[1][t];
    return {xa.omega[t], xa.upsilon[t], d1.real(), -d1.imag(), d2.real(), -d2.imag()};
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

}  // namespace

SuitabilityVerdict check_suitability(const MorseWavelet& w, double delta, int n_max) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ArgumentError("suitability needs a positive stability level");
    }
    if (n_max < 2 || n_max > kMaxBellOrder) {
        throw ArgumentError("suitability order must lie in [2, 32]");
    }
    SuitabilityVerdict v;
    v.delta = delta;
    v.duration = w.duration();
    v.p_bound = std::sqrt(2.0 / delta);
    v.duration_pass = v.duration <= v.p_bound * kRoundingAllowance;
    v.overall = v.duration_pass;
    double factorial = 1.0;
    for (int n = 2; n <= n_max; ++n) {
        factorial *= n;
        const int power = n / 2;
        SuitabilityTerm term;
        term.order = n;
        term.value = std::pow(delta, power) * std::abs(w.peak_derivative(n)) / factorial;
        term.pass = term.value <= kRoundingAllowance;
        v.overall = v.overall && term.pass;
        v.per_order.push_back(term);
    }
    return v;
}

RidgeCurvePrediction predict_ridge_curves(const AnalyticSignal& xa, const MorseWavelet& w) {
    require_moments(xa);
    const std::size_t n = xa.size();
    const double wp = w.peak_frequency();
    const double psi2 = w.peak_derivative(2);
    const double psi3_ratio = w.peak_derivative(3) / psi2;
    const double psi4_ratio = w.peak_derivative(4) / psi2;

    RidgeCurvePrediction out;
    out.amplitude.assign(n, 0.0);
    out.phase.assign(n, 0.0);
    out.valid.assign(n, 0);
    for (std::size_t t = 0; t < n; ++t) {
        if (!usable(xa, t)) {
            continue;
        }
        const auto m = moments_at(xa, t);
        const double w1 = m.omega;
        const double r1 = m.upsilon / w1;
        const double w_prime = m.d_omega / (w1 * w1);
        const double w_second = m.dd_omega / (w1 * w1 * w1);
        const double re_rho2 = r1 * r1 + m.d_upsilon / (w1 * w1);
        out.amplitude[t] = (wp / w1) * (1.0 + re_rho2 * (1.0 + 0.5 * psi3_ratio) +
                                        (w_second + 3.0 * r1 * w_prime) * psi4_ratio / 6.0 -
                                        0.5 * r1 * w_prime * psi2);
        out.phase[t] = (wp / w1) * (1.0 + (0.5 * w_second + r1 * w_prime) * psi2);
        out.valid[t] = 1;
    }
    return out;
}

BiasPrediction predict_bias(const AnalyticSignal& xa, const MorseWavelet& w) {
    require_moments(xa);
    const std::size_t n = xa.size();
    const double p2 = w.duration() * w.duration();
    BiasPrediction b;
    b.delta_a.assign(n, 0.0);
    b.delta_phi.assign(n, 0.0);
    b.omega_bias.assign(n, 0.0);
    b.upsilon_bias.assign(n, 0.0);
    b.leading.assign(n, 0.0);
    auto curves = predict_ridge_curves(xa, w);
    b.ridge_scale_amp = std::move(curves.amplitude);
    b.ridge_scale_phase = std::move(curves.phase);
    b.valid = std::move(curves.valid);

    std::size_t first = n;
    std::size_t last = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (!b.valid[t]) {
            continue;
        }
        first = std::min(first, t);
        last = t;
        const auto m = moments_at(xa, t);
        const double w1 = m.omega;
        const double w2 = w1 * w1;
        const double w3 = w2 * w1;
        const double r1 = m.upsilon / w1;
        b.delta_a[t] = 0.5 * p2 / w2 * (m.d_upsilon + m.upsilon * m.upsilon);
        b.delta_phi[t] = 0.5 * p2 * m.d_omega / w2;
        b.omega_bias[t] = w1 * p2 * (0.5 * m.dd_omega / w3 + r1 * m.d_omega / w2);
        b.upsilon_bias[t] = w1 * p2 * (0.5 * m.dd_upsilon / w3 + r1 * m.d_upsilon / w2);
        b.leading[t] = 0.5 * p2 * cdouble(r1 * r1 + m.d_upsilon / w2, m.d_omega / w2);
    }
    if (first < n) {
        b.validity_truncation = std::min(4, xa.max_derivative + 1);
        b.validity_delta =
            stability_level(xa, first, last + 1, b.validity_truncation).delta;
    }
    return b;
}

std::vector<double> fidelity_ratio(const RidgeEstimate& estimate, const MorseWavelet& w) {
    const double p4 = std::pow(w.duration(), 4);
    std::vector<double> out;
    for (std::size_t i = 0; i < estimate.rho2_hat.size(); ++i) {
        if (estimate.rho2_valid[i]) {
            out.push_back(std::abs(estimate.rho2_hat[i]) * p4 / 4.0);
        }
    }
    return out;
}

FidelityStatistics iterated_fidelity(const RidgeEstimate& estimate, double dt,
                                     const PipelineConfig& config) {
    FidelityStatistics stats;
    stats.config_hash = config_hash_hex(config);
    const std::size_t n = estimate.x_hat.size();
    if (n < 16) {
        stats.message = "estimate too short for a fresh transform";
        return stats;
    }
    const auto ratios = fidelity_ratio(estimate, config.wavelet());
    stats.ratio_samples = ratios.size();
    if (!ratios.empty()) {
        stats.mean_ratio = mean_of(ratios);
        stats.median_ratio = median_of(ratios);
    }

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = estimate.x_hat[i].real();
    }
    const auto rerun = run_pipeline(x, dt, config);
    const std::size_t offset = estimate.time_index.front();

    // Use the rerun curve that overlaps the original times the most.
    const RidgeEstimate* best = nullptr;
    for (const auto& e : rerun.estimates) {
        if (!best || e.x_hat.size() > best->x_hat.size()) {
            best = &e;
        }
    }
    if (!best) {
        stats.message = "re-analysis found no ridge";
        return stats;
    }
    std::vector<double> dev2;
    for (std::size_t i = 0; i < best->x_hat.size(); ++i) {
        const std::size_t k = best->time_index[i];
        if (k >= n || estimate.time_index[k] != offset + k) {
            continue;
        }
        const cdouble ref = estimate.x_hat[k];
        if (std::abs(ref) == 0.0) {
            continue;
        }
        dev2.push_back(std::norm((best->x_hat[i] - ref) / ref));
    }
    if (dev2.empty()) {
        stats.message = "re-analysis shares no samples with the estimate";
        return stats;
    }
    stats.success = true;
    stats.samples = dev2.size();
    stats.mean_dev2 = mean_of(dev2);
    stats.median_dev2 = median_of(dev2);
    return stats;
}

}  // namespace ridgelab
