#include "ridgelab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ridgelab/bellpoly.hpp"
#include "ridgelab/error.hpp"
#include "ridgelab/fft.hpp"

namespace ridgelab {

namespace {

constexpr std::size_t kMinLength = 16;
constexpr double kAmplitudeFloor = 1e-12;
constexpr double kOmegaFloor = 1e-9;
constexpr std::size_t kStencilHalfWidth = 2;

// Index into x of position i of the whole-sample symmetric extension.
std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
    const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
    std::ptrdiff_t k = i % period;
    if (k < 0) {
        k += period;
    }
    if (k > static_cast<std::ptrdiff_t>(n - 1)) {
        k = period - k;
    }
    return static_cast<std::size_t>(k);
}

void fill_amplitude_phase(AnalyticSignal& xa) {
    const std::size_t n = xa.samples.size();
    xa.amplitude.resize(n);
    xa.phase.resize(n);
    xa.sample_valid.assign(n, 1);
    double peak = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        xa.amplitude[j] = std::abs(xa.samples[j]);
        xa.phase[j] = std::arg(xa.samples[j]);
        peak = std::max(peak, xa.amplitude[j]);
    }
    if (!(peak > 0.0)) {
        throw DegenerateSignalError("signal is identically zero; phase is undefined");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (xa.amplitude[j] < kAmplitudeFloor * peak) {
            xa.sample_valid[j] = 0;
        }
    }
}

template <typename T>
std::vector<T> stencil(std::span<const T> f, double dt, const Mask& in_valid, Mask& out_valid) {
    const std::size_t n = f.size();
    std::vector<T> out(n, T{});
    out_valid.assign(n, 0);
    const double scale = 1.0 / (12.0 * dt);
    for (std::size_t j = kStencilHalfWidth; j + kStencilHalfWidth < n; ++j) {
        bool ok = true;
        for (std::size_t k = j - kStencilHalfWidth; k <= j + kStencilHalfWidth; ++k) {
            ok = ok && in_valid[k];
        }
        if (!ok) {
            continue;
        }
        out[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) * scale;
        out_valid[j] = 1;
    }
    return out;
}

}  // namespace

std::vector<double> central_difference(std::span<const double> f, double dt,
                                       const Mask& in_valid, Mask& out_valid) {
    return stencil(f, dt, in_valid, out_valid);
}

std::vector<cdouble> central_difference(std::span<const cdouble> f, double dt,
                                        const Mask& in_valid, Mask& out_valid) {
    return stencil(f, dt, in_valid, out_valid);
}

AnalyticSignal make_analytic(std::span<const double> x, double dt) {
    const std::size_t n = x.size();
    if (n < kMinLength) {
        throw ArgumentError("analytic signal needs at least 16 samples, got " +
                            std::to_string(n));
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ArgumentError("sample interval must be positive and finite");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(x[j])) {
            throw ArgumentError("sample " + std::to_string(j) + " is not finite");
        }
    }
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);

    const std::size_t padded = fft::next_power_of_two(n);
    const std::size_t left = (padded - n) / 2;
    std::vector<cdouble> buffer(padded);
    for (std::size_t p = 0; p < padded; ++p) {
        const auto i = static_cast<std::ptrdiff_t>(p) - static_cast<std::ptrdiff_t>(left);
        buffer[p] = x[reflect_index(i, n)] - mean;
    }

    auto spectrum = fft::forward(buffer);
    const std::size_t half = padded / 2;
    for (std::size_t k = 1; k < half; ++k) {
        spectrum[k] *= 2.0;
    }
    for (std::size_t k = half + 1; k < padded; ++k) {
        spectrum[k] = 0.0;
    }
    const auto analytic = fft::inverse(spectrum);

    AnalyticSignal xa;
    xa.dt = dt;
    xa.samples.resize(n);
    const double norm = 1.0 / static_cast<double>(padded);
    for (std::size_t j = 0; j < n; ++j) {
        xa.samples[j] = analytic[left + j] * norm + mean;
    }
    fill_amplitude_phase(xa);
    return xa;
}

AnalyticSignal wrap_analytic(std::vector<cdouble> samples, double dt) {
    if (samples.size() < kMinLength) {
        throw ArgumentError("analytic signal needs at least 16 samples");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ArgumentError("sample interval must be positive and finite");
    }
    for (const auto& v : samples) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ArgumentError("analytic samples must be finite");
        }
    }
    AnalyticSignal xa;
    xa.dt = dt;
    xa.samples = std::move(samples);
    fill_amplitude_phase(xa);
    return xa;
}

AnalyticSignal instantaneous_moments(AnalyticSignal xa, int max_derivative) {
    if (max_derivative < 1 || max_derivative > kMaxBellOrder) {
        throw ArgumentError("maximum derivative order must lie in [1, 32]");
    }
    if (xa.sample_valid.size() != xa.samples.size()) {
        fill_amplitude_phase(xa);
    }
    const std::size_t n = xa.size();
    const double scale = 1.0 / (12.0 * xa.dt);

    // d/dt ln x at j from ln(x[j+k]/x[j]); the phase of that ratio is built from
    // principal arguments of consecutive ratios so no global unwrapping is needed.
    std::vector<cdouble> dlog(n, 0.0);
    Mask valid(n, 0);
    for (std::size_t j = kStencilHalfWidth; j + kStencilHalfWidth < n; ++j) {
        bool ok = true;
        for (std::size_t k = j - kStencilHalfWidth; k <= j + kStencilHalfWidth; ++k) {
            ok = ok && xa.sample_valid[k];
        }
        if (!ok) {
            continue;
        }
        const auto& s = xa.samples;
        const double step_m2 = std::arg(s[j - 1] / s[j - 2]);
        const double step_m1 = std::arg(s[j] / s[j - 1]);
        const double step_p1 = std::arg(s[j + 1] / s[j]);
        const double step_p2 = std::arg(s[j + 2] / s[j + 1]);
        const double a = xa.amplitude[j];
        const cdouble l_m2(std::log(xa.amplitude[j - 2] / a), -(step_m1 + step_m2));
        const cdouble l_m1(std::log(xa.amplitude[j - 1] / a), -step_m1);
        const cdouble l_p1(std::log(xa.amplitude[j + 1] / a), step_p1);
        const cdouble l_p2(std::log(xa.amplitude[j + 2] / a), step_p1 + step_p2);
        dlog[j] = (l_m2 - 8.0 * l_m1 + 8.0 * l_p1 - l_p2) * scale;
        valid[j] = 1;
    }

    xa.max_derivative = max_derivative;
    xa.omega.assign(n, 0.0);
    xa.upsilon.assign(n, 0.0);
    xa.eta.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        xa.upsilon[j] = dlog[j].real();
        xa.omega[j] = dlog[j].imag();
        xa.eta[j] = cdouble(xa.omega[j], -xa.upsilon[j]);
    }
    xa.derivative_valid.assign(1, valid);
    xa.eta_derivatives.clear();
    for (int order = 1; order < max_derivative; ++order) {
        const auto& prev = order == 1 ? xa.eta : xa.eta_derivatives.back();
        Mask next_valid;
        auto next = central_difference(std::span<const cdouble>(prev), xa.dt,
                                       xa.derivative_valid.back(), next_valid);
        xa.eta_derivatives.push_back(std::move(next));
        xa.derivative_valid.push_back(std::move(next_valid));
    }
    return xa;
}

ModulationFunctions modulation_functions(const AnalyticSignal& xa, int order) {
    if (order < 0 || order > kMaxBellOrder) {
        throw ArgumentError("modulation function order must lie in [0, 32]");
    }
    if (order > 0 && (xa.max_derivative < order || xa.omega.size() != xa.size())) {
        throw ArgumentError("modulation functions of order " + std::to_string(order) +
                            " need moments up to derivative order " + std::to_string(order - 1));
    }
    const std::size_t n = xa.size();
    ModulationFunctions mf;
    mf.order = order;
    mf.rho.assign(static_cast<std::size_t>(order) + 1, std::vector<cdouble>(n, 0.0));
    mf.valid.assign(static_cast<std::size_t>(order) + 1, Mask(n, 0));
    std::fill(mf.rho[0].begin(), mf.rho[0].end(), cdouble(1.0));
    std::fill(mf.valid[0].begin(), mf.valid[0].end(), std::uint8_t{1});
    if (order == 0) {
        return mf;
    }

    const double omega_floor = kOmegaFloor / xa.dt;
    const cdouble i(0.0, 1.0);
    std::vector<cdouble> args(static_cast<std::size_t>(order));
    for (std::size_t t = 0; t < n; ++t) {
        if (!xa.derivative_valid[0][t] || std::abs(xa.omega[t]) < omega_floor) {
            continue;
        }
        const double w = xa.omega[t];
        args[0] = xa.upsilon[t] / w;
        int usable = 1;
        double w_power = w;
        for (int k = 2; k <= order; ++k) {
            const auto idx = static_cast<std::size_t>(k - 1);
            if (!xa.derivative_valid[idx][t]) {
                break;
            }
            w_power *= w;
            args[idx] = i * xa.eta_derivatives[idx - 1][t] / w_power;
            usable = k;
        }
        const auto bells = complete_bell_sequence(args, usable);
        for (int k = 1; k <= usable; ++k) {
            mf.rho[static_cast<std::size_t>(k)][t] = bells[static_cast<std::size_t>(k)];
            mf.valid[static_cast<std::size_t>(k)][t] = 1;
        }
    }
    return mf;
}

StabilityReport stability_level(const AnalyticSignal& xa, std::size_t begin, std::size_t end,
                                int truncation) {
    if (truncation < 1) {
        throw ArgumentError("stability truncation order must be at least 1");
    }
    if (xa.max_derivative < truncation - 1 || xa.omega.size() != xa.size()) {
        throw ArgumentError("stability level needs moments up to derivative order " +
                            std::to_string(truncation - 1));
    }
    end = std::min(end, xa.size());
    if (begin >= end) {
        throw ArgumentError("stability level needs a non-empty interval");
    }
    StabilityReport report;
    report.truncation = truncation;
    report.begin = begin;
    report.end = end;
    report.per_order.assign(static_cast<std::size_t>(truncation), 0.0);

    const double omega_floor = kOmegaFloor / xa.dt;
    std::size_t used = 0;
    for (std::size_t t = begin; t < end; ++t) {
        if (!xa.derivative_valid[static_cast<std::size_t>(truncation - 1)][t] ||
            std::abs(xa.omega[t]) < omega_floor) {
            continue;
        }
        ++used;
        const double w = std::abs(xa.omega[t]);
        report.per_order[0] = std::max(report.per_order[0], std::abs(xa.upsilon[t]) / w);
        double w_power = w;
        for (int k = 2; k <= truncation; ++k) {
            w_power *= w;
            const auto idx = static_cast<std::size_t>(k - 1);
            report.per_order[idx] =
                std::max(report.per_order[idx], std::abs(xa.eta_derivatives[idx - 1][t]) / w_power);
        }
    }
    if (used == 0) {
        throw ArgumentError("stability interval holds no valid samples");
    }
    for (int k = 2; k <= truncation; ++k) {
        auto& v = report.per_order[static_cast<std::size_t>(k - 1)];
        v = std::pow(v, 1.0 / k);
    }
    report.delta = *std::max_element(report.per_order.begin(), report.per_order.end());
    return report;
}

}  // namespace ridgelab
