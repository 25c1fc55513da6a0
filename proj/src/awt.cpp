#include "ridgelab/awt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "ridgelab/error.hpp"
#include "ridgelab/fft.hpp"

namespace ridgelab {

namespace {

constexpr double kMagnitudeFloor = 1e-8;

enum Kernel : unsigned { kValue = 1u, kTime = 2u, kScale = 4u };

struct Columns {
    std::size_t n = 0;
    ComplexMatrix w;
    ComplexMatrix u;
    ComplexMatrix v;
    std::vector<std::string> errors;
};

void check_input(std::span<const double> x, double dt) {
    if (x.size() < 16) {
        throw ArgumentError("wavelet transform needs at least 16 samples");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ArgumentError("sample interval must be positive and finite");
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!std::isfinite(x[j])) {
            throw ArgumentError("sample " + std::to_string(j) + " is not finite");
        }
    }
}

std::vector<cdouble> padded_spectrum(std::span<const double> x, std::size_t& left) {
    const std::size_t n = x.size();
    const std::size_t padded = fft::next_power_of_two(n);
    left = (padded - n) / 2;
    const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
    std::vector<double> buffer(padded);
    for (std::size_t p = 0; p < padded; ++p) {
        std::ptrdiff_t k = (static_cast<std::ptrdiff_t>(p) - static_cast<std::ptrdiff_t>(left)) %
                           period;
        if (k < 0) {
            k += period;
        }
        if (k > static_cast<std::ptrdiff_t>(n - 1)) {
            k = period - k;
        }
        buffer[p] = x[static_cast<std::size_t>(k)];
    }
    return fft::forward_real(buffer);
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

Columns compute_columns(std::span<const double> x, double dt, const MorseWavelet& w,
                        const ScaleGrid& grid, const TransformOptions& options, unsigned kernels) {
    check_input(x, dt);
    validate_scale_grid(grid);
    const std::size_t n = x.size();
    std::size_t left = 0;
    const auto spectrum = padded_spectrum(x, left);
    const std::size_t padded = spectrum.size();
    const std::size_t half = padded / 2;
    const double nyquist = std::numbers::pi / dt;
    const double peak = w.peak_frequency();
    const double norm = 1.0 / static_cast<double>(padded);

    Columns out;
    out.n = n;
    const std::size_t m = grid.size();
    if (kernels & kValue) {
        out.w = ComplexMatrix(n, m);
    }
    if (kernels & kTime) {
        out.u = ComplexMatrix(n, m);
    }
    if (kernels & kScale) {
        out.v = ComplexMatrix(n, m);
    }
    out.errors.assign(m, std::string());

    std::vector<double> omega(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        omega[k] = fft::bin_frequency(k, padded, dt);
    }

    const unsigned threads = options.threads ? options.threads : default_thread_count();
    parallel_for(m, threads, [&](std::size_t c) {
        const double s = grid.scales[c];
        if (!(peak / s < nyquist)) {
            std::ostringstream msg;
            msg << "scale " << s << " puts the wavelet peak frequency " << peak / s
                << " at or beyond the Nyquist frequency " << nyquist;
            out.errors[c] = msg.str();
            return;
        }
        std::vector<cdouble> buf(padded);
        auto run = [&](ComplexMatrix& target, auto&& kernel) {
            std::fill(buf.begin(), buf.end(), cdouble(0.0));
            for (std::size_t k = 1; k <= half; ++k) {
                const double weight = (k == half) ? 0.5 : 1.0;
                buf[k] = weight * kernel(s * omega[k]) * spectrum[k];
            }
            const auto column = fft::inverse(buf);
            for (std::size_t j = 0; j < n; ++j) {
                target(j, c) = column[left + j] * norm;
            }
        };
        if (kernels & kValue) {
            run(out.w, [&](double nu) { return cdouble(w.evaluate(nu)); });
        }
        if (kernels & kTime) {
            run(out.u, [&](double nu) { return cdouble(0.0, nu / peak * w.evaluate(nu)); });
        }
        if (kernels & kScale) {
            run(out.v, [&](double nu) { return cdouble(w.scale_derivative_kernel(nu)); });
        }
    });
    return out;
}

Scalogram finish_scalogram(Columns& cols, double dt, const MorseWavelet& w, const ScaleGrid& grid,
                           const TransformOptions& options) {
    if (!(options.edge_alpha >= 0.0 && options.edge_alpha < 1.0)) {
        throw ArgumentError("edge energy fraction must lie in [0, 1)");
    }
    Scalogram sc;
    sc.values = std::move(cols.w);
    sc.grid = grid;
    sc.wavelet = w;
    sc.dt = dt;
    sc.edge_alpha = options.edge_alpha;
    sc.scale_errors = std::move(cols.errors);
    const std::size_t n = cols.n;
    const std::size_t m = grid.size();
    sc.edge_mask = MaskMatrix(n, m, 0);
    if (options.edge_alpha == 0.0) {
        for (std::size_t c = 0; c < m; ++c) {
            if (!sc.scale_ok(c)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                sc.edge_mask(j, c) = 1;
            }
        }
        return sc;
    }
    const EnergyProfile profile(w);
    for (std::size_t c = 0; c < m; ++c) {
        if (!sc.scale_ok(c)) {
            continue;
        }
        const std::size_t margin = edge_margin(profile, options.edge_alpha, grid.scales[c], dt);
        for (std::size_t j = margin; j + margin < n; ++j) {
            sc.edge_mask(j, c) = 1;
        }
    }
    return sc;
}

}  // namespace

std::vector<double> ScaleGrid::frequencies(const MorseWavelet& w) const {
    std::vector<double> out(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        out[i] = w.peak_frequency() / scales[i];
    }
    return out;
}

void validate_scale_grid(const ScaleGrid& grid) {
    if (grid.scales.size() < 2) {
        throw ArgumentError("scale grid needs at least two scales");
    }
    for (std::size_t i = 0; i < grid.scales.size(); ++i) {
        const double s = grid.scales[i];
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw ArgumentError("scales must be positive and finite");
        }
        if (i > 0 && !(s > grid.scales[i - 1])) {
            throw ArgumentError("scales must be strictly increasing");
        }
    }
}

ScaleGrid make_scale_grid(const MorseWavelet& w, double freq_min, double freq_max,
                          int voices_per_octave) {
    if (!(freq_min > 0.0) || !(freq_max > freq_min) || !std::isfinite(freq_max)) {
        throw ArgumentError("scale grid needs 0 < freq_min < freq_max");
    }
    if (voices_per_octave < 2) {
        throw ArgumentError("scale grid needs at least 2 voices per octave");
    }
    const double s_min = w.peak_frequency() / freq_max;
    const double octaves = std::log2(freq_max / freq_min);
    const auto steps = static_cast<std::size_t>(
        std::floor(octaves * voices_per_octave + 1e-9));
    ScaleGrid grid;
    for (std::size_t k = 0; k <= std::max<std::size_t>(steps, 1); ++k) {
        grid.scales.push_back(s_min * std::exp2(static_cast<double>(k) / voices_per_octave));
    }
    return grid;
}

std::size_t edge_margin(const EnergyProfile& profile, double alpha, double scale, double dt) {
    if (alpha == 0.0) {
        return 0;
    }
    return static_cast<std::size_t>(std::ceil(scale * profile.support(alpha) / dt));
}

unsigned default_thread_count() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RIDGELAB_THREADS")) {
        char* end = nullptr;
        const long requested = std::strtol(env, &end, 10);
        if (end != env && requested >= 1) {
            return static_cast<unsigned>(std::min<long>(requested, hw));
        }
    }
    return hw;
}

Scalogram transform(std::span<const double> x, double dt, const MorseWavelet& w,
                    const ScaleGrid& grid, const TransformOptions& options) {
    auto cols = compute_columns(x, dt, w, grid, options, kValue);
    return finish_scalogram(cols, dt, w, grid, options);
}

ComplexMatrix transform_time_derivative(std::span<const double> x, double dt,
                                        const MorseWavelet& w, const ScaleGrid& grid,
                                        const TransformOptions& options) {
    return compute_columns(x, dt, w, grid, options, kTime).u;
}

ComplexMatrix transform_scale_derivative(std::span<const double> x, double dt,
                                         const MorseWavelet& w, const ScaleGrid& grid,
                                         const TransformOptions& options) {
    return compute_columns(x, dt, w, grid, options, kScale).v;
}

TransformBundle transform_with_derivatives(std::span<const double> x, double dt,
                                           const MorseWavelet& w, const ScaleGrid& grid,
                                           const TransformOptions& options) {
    auto cols = compute_columns(x, dt, w, grid, options, kValue | kTime | kScale);
    TransformBundle bundle;
    bundle.u = std::move(cols.u);
    bundle.v = std::move(cols.v);
    bundle.scalogram = finish_scalogram(cols, dt, w, grid, options);
    return bundle;
}

TransformMoments transform_moments(const Scalogram& scalogram, const ComplexMatrix& u) {
    const std::size_t n = scalogram.times();
    const std::size_t m = scalogram.scales();
    if (u.rows != n || u.cols != m) {
        throw ArgumentError("time-derivative matrix does not match the scalogram");
    }
    double peak = 0.0;
    for (const auto& v : scalogram.values.data) {
        peak = std::max(peak, std::abs(v));
    }
    const double floor = kMagnitudeFloor * peak;
    const double wp = scalogram.wavelet.peak_frequency();

    TransformMoments mo;
    mo.omega = RealMatrix(n, m);
    mo.upsilon = RealMatrix(n, m);
    mo.p2 = ComplexMatrix(n, m);
    mo.valid = MaskMatrix(n, m, 0);
    mo.p2_valid = MaskMatrix(n, m, 0);

    for (std::size_t c = 0; c < m; ++c) {
        if (!scalogram.scale_ok(c)) {
            continue;
        }
        const double factor = wp / scalogram.grid.scales[c];
        Mask col_valid(n, 0);
        std::vector<double> om(n, 0.0);
        std::vector<double> up(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const cdouble wv = scalogram.values(j, c);
            if (!scalogram.edge_mask(j, c) || !(std::abs(wv) >= floor) || peak == 0.0) {
                continue;
            }
            const cdouble dlog = factor * u(j, c) / wv;
            om[j] = dlog.imag();
            up[j] = dlog.real();
            mo.omega(j, c) = om[j];
            mo.upsilon(j, c) = up[j];
            mo.valid(j, c) = 1;
            col_valid[j] = 1;
        }
        Mask d_valid;
        const auto d_om = central_difference(std::span<const double>(om), scalogram.dt, col_valid,
                                             d_valid);
        const auto d_up = central_difference(std::span<const double>(up), scalogram.dt, col_valid,
                                             d_valid);
        for (std::size_t j = 0; j < n; ++j) {
            if (!d_valid[j] || om[j] == 0.0) {
                continue;
            }
            const double w2 = om[j] * om[j];
            mo.p2(j, c) = cdouble(up[j] * up[j] + d_up[j], d_om[j]) / w2;
            mo.p2_valid(j, c) = 1;
        }
    }
    return mo;
}

}  // namespace ridgelab
