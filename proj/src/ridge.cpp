#include "ridgelab/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "ridgelab/error.hpp"

namespace ridgelab {

namespace {

// Lagrange weights of the nodes xs at the point x.
std::vector<double> lagrange_weights(const std::vector<double>& xs, double x) {
    std::vector<double> weights(xs.size(), 1.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (k != i) {
                weights[i] *= (x - xs[k]) / (xs[i] - xs[k]);
            }
        }
    }
    return weights;
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    const auto wts = lagrange_weights(xs, x);
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        acc += wts[i] * ys[i];
    }
    return acc;
}

double ridge_quantity(const TransformAnalysis& a, RidgeKind kind, std::size_t j, std::size_t c) {
    const auto& sc = a.scalogram();
    if (kind == RidgeKind::amplitude) {
        return (a.bundle.v(j, c) / sc.values(j, c)).real();
    }
    return a.moments.omega(j, c) - sc.wavelet.peak_frequency() / sc.grid.scales[c];
}

}  // namespace

std::string to_string(RidgeKind kind) {
    return kind == RidgeKind::amplitude ? "amplitude" : "phase";
}

RidgeKind parse_ridge_kind(const std::string& text) {
    if (text == "amplitude") {
        return RidgeKind::amplitude;
    }
    if (text == "phase") {
        return RidgeKind::phase;
    }
    throw ArgumentError("ridge kind must be 'amplitude' or 'phase', got '" + text + "'");
}

TransformAnalysis analyze_transform(std::span<const double> x, double dt, const MorseWavelet& w,
                                    const ScaleGrid& grid, const TransformOptions& options) {
    TransformAnalysis a;
    a.bundle = transform_with_derivatives(x, dt, w, grid, options);
    a.moments = transform_moments(a.bundle.scalogram, a.bundle.u);
    return a;
}

std::vector<RidgePoint> detect_ridge_points(const TransformAnalysis& a, RidgeKind kind) {
    const auto& sc = a.scalogram();
    const auto& mo = a.moments;
    const std::size_t n = sc.times();
    const std::size_t m = sc.scales();
    std::vector<double> log_s(m);
    for (std::size_t c = 0; c < m; ++c) {
        log_s[c] = std::log(sc.grid.scales[c]);
    }

    std::vector<RidgePoint> points;
    std::vector<double> f(m);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t c = 0; c < m; ++c) {
            f[c] = mo.valid(j, c) ? ridge_quantity(a, kind, j, c) : 0.0;
        }
        for (std::size_t c = 0; c + 1 < m; ++c) {
            if (!mo.valid(j, c) || !mo.valid(j, c + 1)) {
                continue;
            }
            const bool crossing = kind == RidgeKind::amplitude ? (f[c] > 0.0 && f[c + 1] <= 0.0)
                                                               : (f[c] < 0.0 && f[c + 1] >= 0.0);
            if (!crossing) {
                continue;
            }
            std::vector<std::size_t> cols;
            if (c >= 1 && mo.valid(j, c - 1)) {
                cols.push_back(c - 1);
            }
            cols.push_back(c);
            cols.push_back(c + 1);
            if (c + 2 < m && mo.valid(j, c + 2)) {
                cols.push_back(c + 2);
            }
            std::vector<double> xs;
            std::vector<double> ys;
            for (auto k : cols) {
                xs.push_back(log_s[k]);
                ys.push_back(f[k]);
            }

            double lo = log_s[c];
            double hi = log_s[c + 1];
            const double f_lo = f[c];
            for (int iter = 0; iter < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo));
                 ++iter) {
                const double mid = 0.5 * (lo + hi);
                const double fm = interpolate(xs, ys, mid);
                if ((fm > 0.0) == (f_lo > 0.0) && fm != 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const double root = 0.5 * (lo + hi);

            const auto wts = lagrange_weights(xs, root);
            RidgePoint p;
            p.kind = kind;
            p.time_index = j;
            p.scale = std::exp(root);
            p.grid_position =
                static_cast<double>(c) + (root - log_s[c]) / (log_s[c + 1] - log_s[c]);
            p.value = 0.0;
            p.p2 = 0.0;
            p.p2_valid = true;
            for (std::size_t i = 0; i < cols.size(); ++i) {
                const auto k = cols[i];
                p.value += wts[i] * sc.values(j, k);
                p.omega += wts[i] * mo.omega(j, k);
                p.upsilon += wts[i] * mo.upsilon(j, k);
                p.p2 += wts[i] * mo.p2(j, k);
                p.p2_valid = p.p2_valid && mo.p2_valid(j, k);
            }
            if (!p.p2_valid) {
                p.p2 = 0.0;
            }
            points.push_back(p);
        }
    }
    return points;
}

double default_min_cycles(const MorseWavelet& w) { return 2.0 * w.duration(); }

std::vector<RidgeCurve> chain_ridges(const std::vector<RidgePoint>& input, const ScaleGrid& grid,
                                     double dt, const ChainOptions& options) {
    validate_scale_grid(grid);
    if (!(options.max_jump > 0.0)) {
        throw ArgumentError("chaining needs a positive max_jump");
    }
    const double step = (std::log(grid.scales.back()) - std::log(grid.scales.front())) /
                        static_cast<double>(grid.size() - 1);
    const double threshold = options.max_jump * step;

    std::map<std::size_t, std::vector<const RidgePoint*>> by_time;
    for (const auto& p : input) {
        by_time[p.time_index].push_back(&p);
    }

    std::vector<RidgeCurve> curves;
    std::vector<std::size_t> active;  // curves whose last point is at the previous time
    std::size_t previous_time = 0;
    bool first = true;
    for (auto& [t, pts] : by_time) {
        if (first || t != previous_time + 1) {
            active.clear();
        }
        first = false;
        previous_time = t;

        struct Candidate {
            double distance;
            double magnitude;
            std::size_t curve;
            std::size_t point;
        };
        std::vector<Candidate> candidates;
        for (std::size_t ci = 0; ci < active.size(); ++ci) {
            const double last = std::log(curves[active[ci]].points.back().scale);
            for (std::size_t pi = 0; pi < pts.size(); ++pi) {
                const double d = std::abs(std::log(pts[pi]->scale) - last);
                if (d <= threshold) {
                    candidates.push_back({d, std::abs(pts[pi]->value), ci, pi});
                }
            }
        }
        std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
            if (a.distance != b.distance) {
                return a.distance < b.distance;
            }
            if (a.magnitude != b.magnitude) {
                return a.magnitude > b.magnitude;
            }
            if (a.curve != b.curve) {
                return a.curve < b.curve;
            }
            return a.point < b.point;
        });
        std::vector<std::uint8_t> curve_taken(active.size(), 0);
        std::vector<std::uint8_t> point_taken(pts.size(), 0);
        std::vector<std::size_t> next_active;
        for (const auto& cand : candidates) {
            if (curve_taken[cand.curve] || point_taken[cand.point]) {
                continue;
            }
            curve_taken[cand.curve] = 1;
            point_taken[cand.point] = 1;
            curves[active[cand.curve]].points.push_back(*pts[cand.point]);
            next_active.push_back(active[cand.curve]);
        }
        for (std::size_t pi = 0; pi < pts.size(); ++pi) {
            if (point_taken[pi]) {
                continue;
            }
            RidgeCurve curve;
            curve.kind = pts[pi]->kind;
            curve.points.push_back(*pts[pi]);
            curves.push_back(std::move(curve));
            next_active.push_back(curves.size() - 1);
        }
        std::sort(next_active.begin(), next_active.end());
        active = std::move(next_active);
    }

    std::vector<RidgeCurve> kept;
    for (auto& curve : curves) {
        double cycles = 0.0;
        for (const auto& p : curve.points) {
            cycles += p.omega * dt / (2.0 * std::numbers::pi);
        }
        curve.length_cycles = cycles;
        if (cycles >= options.min_cycles) {
            kept.push_back(std::move(curve));
        }
    }
    std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.points.front().time_index != b.points.front().time_index) {
            return a.points.front().time_index < b.points.front().time_index;
        }
        return a.points.front().scale < b.points.front().scale;
    });
    return kept;
}

RidgeEstimate estimate_along_ridge(const RidgeCurve& curve, double dt) {
    if (curve.points.empty()) {
        throw ArgumentError("cannot estimate along an empty ridge curve");
    }
    RidgeEstimate e;
    const std::size_t n = curve.points.size();
    e.time_index.reserve(n);
    double previous_phase = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = curve.points[i];
        e.time_index.push_back(p.time_index);
        e.time.push_back(static_cast<double>(p.time_index) * dt);
        e.x_hat.push_back(p.value);
        e.a_hat.push_back(std::abs(p.value));
        double phase = std::arg(p.value);
        if (i > 0) {
            phase = previous_phase + std::remainder(phase - previous_phase, 2.0 * std::numbers::pi);
        }
        previous_phase = phase;
        e.phi_hat.push_back(phase);
        e.omega_hat.push_back(p.omega);
        e.upsilon_hat.push_back(p.upsilon);
        e.rho2_hat.push_back(p.p2);
        e.rho2_valid.push_back(p.p2_valid ? 1 : 0);
        e.scale.push_back(p.scale);
    }
    return e;
}

}  // namespace ridgelab
