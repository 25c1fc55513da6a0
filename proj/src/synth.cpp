#include "ridgelab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ridgelab/error.hpp"

namespace ridgelab {

namespace {

void check_common(std::size_t n, double dt, double amplitude) {
    if (n < 16) {
        throw ArgumentError("synthetic signals need at least 16 samples");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ArgumentError("sample interval must be positive and finite");
    }
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw ArgumentError("amplitude must be positive and finite");
    }
}

void check_band(const SyntheticSignal& s) {
    const double nyquist = std::numbers::pi / s.dt;
    const auto [lo, hi] = std::minmax_element(s.omega.begin(), s.omega.end());
    if (!(*lo > 0.0) || !(*hi < nyquist)) {
        std::ostringstream msg;
        msg << s.kind << " signal frequency range [" << *lo << ", " << *hi
            << "] leaves the open band (0, " << nyquist << ")";
        throw ArgumentError(msg.str());
    }
}

SyntheticSignal allocate(const char* kind, std::size_t n, double dt) {
    SyntheticSignal s;
    s.kind = kind;
    s.dt = dt;
    s.x.resize(n);
    s.analytic.resize(n);
    s.omega.resize(n);
    s.upsilon.resize(n);
    s.rho2.resize(n);
    return s;
}

}  // namespace

SyntheticSignal make_tone(std::size_t n, double dt, double amplitude, double omega0,
                          double phase) {
    check_common(n, dt, amplitude);
    auto s = allocate("tone", n, dt);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = s.time(j);
        s.analytic[j] = std::polar(amplitude, omega0 * t + phase);
        s.x[j] = amplitude * std::cos(omega0 * t + phase);
        s.omega[j] = omega0;
        s.upsilon[j] = 0.0;
        s.rho2[j] = 0.0;
    }
    check_band(s);
    return s;
}

SyntheticSignal make_fm(std::size_t n, double dt, double amplitude, double omega0, double m,
                        double omega1) {
    check_common(n, dt, amplitude);
    if (!(m >= 0.0 && m < 1.0)) {
        throw ArgumentError("fm modulation depth must lie in [0, 1)");
    }
    if (!(omega1 > 0.0) || !std::isfinite(omega1)) {
        throw ArgumentError("fm modulation frequency must be positive");
    }
    auto s = allocate("fm", n, dt);
    const cdouble i(0.0, 1.0);
    const double c = omega0 * m / omega1;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = s.time(j);
        const cdouble rot = std::exp(i * (omega1 * t));
        // ln x = ln a + i omega0 t - (omega0 m / omega1) exp(i omega1 t)
        s.analytic[j] = amplitude * std::exp(i * (omega0 * t) - c * rot);
        s.x[j] = s.analytic[j].real();
        const cdouble eta = omega0 * (1.0 - m * rot);
        s.omega[j] = eta.real();
        s.upsilon[j] = -eta.imag();
        const cdouble deta = -omega0 * m * i * omega1 * rot;
        const double w = s.omega[j];
        const double r1 = s.upsilon[j] / w;
        s.rho2[j] = r1 * r1 + i * deta / (w * w);
    }
    check_band(s);
    return s;
}

SyntheticSignal make_chirp(std::size_t n, double dt, double amplitude, double omega0, double q) {
    check_common(n, dt, amplitude);
    auto s = allocate("chirp", n, dt);
    const cdouble i(0.0, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = s.time(j);
        const double phi = omega0 * t + 0.5 * q * t * t;
        s.analytic[j] = std::polar(amplitude, phi);
        s.x[j] = amplitude * std::cos(phi);
        s.omega[j] = omega0 + q * t;
        s.upsilon[j] = 0.0;
        s.rho2[j] = i * q / (s.omega[j] * s.omega[j]);
    }
    check_band(s);
    return s;
}

SyntheticSignal make_gaussian_envelope(std::size_t n, double dt, double amplitude, double omega0,
                                       double width) {
    check_common(n, dt, amplitude);
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw ArgumentError("envelope width must be positive");
    }
    auto s = allocate("gaussian-envelope", n, dt);
    const double centre = 0.5 * static_cast<double>(n - 1) * dt;
    const double w2 = width * width;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = s.time(j);
        const double u = t - centre;
        const double a = amplitude * std::exp(-0.5 * u * u / w2);
        s.analytic[j] = std::polar(a, omega0 * t);
        s.x[j] = a * std::cos(omega0 * t);
        s.omega[j] = omega0;
        s.upsilon[j] = -u / w2;
        // a''/a = upsilon^2 + upsilon'
        const double r1 = s.upsilon[j] / omega0;
        s.rho2[j] = r1 * r1 - 1.0 / (w2 * omega0 * omega0);
    }
    check_band(s);
    return s;
}

}  // namespace ridgelab
