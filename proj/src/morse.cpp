#include "ridgelab/morse.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "ridgelab/bellpoly.hpp"
#include "ridgelab/error.hpp"
#include "ridgelab/fft.hpp"

namespace ridgelab {

namespace {

constexpr std::size_t kProfilePoints = std::size_t{1} << 14;
constexpr double kProfileNyquistRatio = 32.0;
constexpr double kAliasingThreshold = 1e-3;

}  // namespace

MorseWavelet::MorseWavelet(double beta, double gamma) : beta_(beta), gamma_(gamma) {
    if (!(std::isfinite(beta) && beta > 0.0) || !(std::isfinite(gamma) && gamma > 0.0)) {
        std::ostringstream msg;
        msg << "morse wavelet needs beta > 0 and gamma > 0, got (" << beta << ", " << gamma
            << ")";
        throw ArgumentError(msg.str());
    }
}

double MorseWavelet::peak_frequency() const { return std::pow(beta_ / gamma_, 1.0 / gamma_); }

double MorseWavelet::amplitude_constant() const {
    return 2.0 * std::pow(std::numbers::e * gamma_ / beta_, beta_ / gamma_);
}

double MorseWavelet::duration() const { return std::sqrt(beta_ * gamma_); }

double MorseWavelet::decay_rate() const { return beta_ + 1.0; }

double MorseWavelet::evaluate(double omega) const {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        return 0.0;
    }
    // Written relative to the peak: 2 exp((beta/gamma)(gamma ln u + 1 - u^gamma)).
    const double log_u_gamma = gamma_ * std::log(omega / peak_frequency());
    const double exponent = (beta_ / gamma_) * (log_u_gamma - std::expm1(log_u_gamma));
    return 2.0 * std::exp(exponent);
}

std::vector<double> MorseWavelet::scaled_log_derivatives(int n, double u_pow_gamma) const {
    // beta [(-1)^(k-1) (k-1)! - (gamma-1)(gamma-2)...(gamma-k+1) u^gamma]
    std::vector<double> c(static_cast<std::size_t>(n));
    double factorial = 1.0;
    double falling = 1.0;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            factorial *= static_cast<double>(k - 1);
            falling *= gamma_ - static_cast<double>(k - 1);
        }
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        c[static_cast<std::size_t>(k - 1)] = beta_ * (sign * factorial - falling * u_pow_gamma);
    }
    return c;
}

double MorseWavelet::dimensionless_derivative(int n, double omega) const {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("dimensionless derivative needs a positive finite frequency");
    }
    if (n < 0 || n > kMaxBellOrder) {
        throw ArgumentError("dimensionless derivative order out of range");
    }
    const double u_pow_gamma = std::pow(omega / peak_frequency(), gamma_);
    const auto c = scaled_log_derivatives(n, u_pow_gamma);
    const std::vector<cdouble> args(c.begin(), c.end());
    return complete_bell(args, n).real();
}

double MorseWavelet::peak_derivative(int n) const {
    if (n < 0 || n > kMaxBellOrder) {
        throw ArgumentError("dimensionless derivative order out of range");
    }
    const auto c = scaled_log_derivatives(n, 1.0);
    const std::vector<cdouble> args(c.begin(), c.end());
    return complete_bell(args, n).real();
}

double MorseWavelet::scale_derivative_kernel(double omega) const {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        return 0.0;
    }
    const double u_pow_gamma = std::pow(omega / peak_frequency(), gamma_);
    return evaluate(omega) * beta_ * (1.0 - u_pow_gamma);
}

double SampledWavelet::time(std::size_t j) const {
    const auto half = static_cast<double>(values.size() / 2);
    return (static_cast<double>(j) - half) * grid_spacing;
}

double energy_beyond_nyquist(const MorseWavelet& w, double grid_spacing, double scale) {
    const double nyquist_arg = scale * std::numbers::pi / grid_spacing;
    const double shape = (2.0 * w.beta() + 1.0) / w.gamma();
    return boost::math::gamma_q(shape, 2.0 * std::pow(nyquist_arg, w.gamma()));
}

SampledWavelet sample_time_domain(const MorseWavelet& w, std::size_t n_points,
                                  double grid_spacing, double scale) {
    if (n_points < 16 || !fft::is_power_of_two(n_points)) {
        throw ArgumentError("sample_time_domain needs a power-of-two point count >= 16");
    }
    if (!(scale > 0.0) || !(grid_spacing > 0.0)) {
        throw ArgumentError("sample_time_domain needs positive scale and grid spacing");
    }
    const double beyond = energy_beyond_nyquist(w, grid_spacing, scale);
    if (beyond > kAliasingThreshold) {
        std::ostringstream msg;
        msg << "morse wavelet (beta=" << w.beta() << ", gamma=" << w.gamma()
            << ") at scale " << scale << " places " << beyond
            << " of its energy above the grid Nyquist frequency";
        throw AliasingError(msg.str());
    }

    std::vector<cdouble> spectrum(n_points, 0.0);
    for (std::size_t k = 0; k <= n_points / 2; ++k) {
        const double omega = fft::bin_frequency(k, n_points, grid_spacing);
        // (-1)^k moves t = 0 to the centre of the grid.
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        spectrum[k] = sign * w.evaluate(scale * omega);
    }
    auto values = fft::inverse(spectrum);
    const double norm = 1.0 / (static_cast<double>(n_points) * grid_spacing);
    for (auto& v : values) {
        v *= norm;
    }
    return SampledWavelet{std::move(values), grid_spacing, scale};
}

EnergyProfile::EnergyProfile(const MorseWavelet& w) {
    if (!(w.beta() > 0.5)) {
        throw DivergenceError("energy profile needs beta > 1/2 for a finite time support");
    }
    spacing_ = std::numbers::pi / (kProfileNyquistRatio * w.peak_frequency());
    const auto sampled = sample_time_domain(w, kProfilePoints, spacing_, 1.0);
    const std::size_t half = kProfilePoints / 2;

    density_.resize(half + 1);
    density_[0] = std::norm(sampled.values[half]);
    for (std::size_t m = 1; m < half; ++m) {
        density_[m] = 0.5 * (std::norm(sampled.values[half + m]) +
                             std::norm(sampled.values[half - m]));
    }
    density_[half] = std::norm(sampled.values[0]);

    cumulative_.resize(half + 1);
    cumulative_[0] = 0.0;
    for (std::size_t m = 1; m <= half; ++m) {
        cumulative_[m] = cumulative_[m - 1] + 0.5 * spacing_ * (density_[m - 1] + density_[m]);
    }
}

double EnergyProfile::max_half_width() const {
    return spacing_ * static_cast<double>(density_.size() - 1);
}

double EnergyProfile::fraction(double half_width) const {
    if (!(half_width >= 0.0)) {
        throw ArgumentError("energy fraction needs a non-negative half width");
    }
    const double total = cumulative_.back();
    if (half_width >= max_half_width()) {
        return 1.0;
    }
    const double position = half_width / spacing_;
    const auto m = static_cast<std::size_t>(position);
    const double x = half_width - static_cast<double>(m) * spacing_;
    const double f0 = density_[m];
    const double f1 = density_[m + 1];
    const double partial = f0 * x + (f1 - f0) * x * x / (2.0 * spacing_);
    return std::min(1.0, (cumulative_[m] + partial) / total);
}

double EnergyProfile::support(double alpha) const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ArgumentError("time support needs an energy fraction strictly inside (0, 1)");
    }
    double lo = 0.0;
    double hi = max_half_width();
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (fraction(mid) < alpha) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double energy_fraction(const MorseWavelet& w, double half_width) {
    if (!(half_width >= 0.0)) {
        throw ArgumentError("energy fraction needs a non-negative half width");
    }
    return EnergyProfile(w).fraction(half_width);
}

double time_support(const MorseWavelet& w, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ArgumentError("time support needs an energy fraction strictly inside (0, 1)");
    }
    return EnergyProfile(w).support(alpha);
}

double time_spread(const MorseWavelet& w) {
    const double beta = w.beta();
    const double gamma = w.gamma();
    if (!(beta > 0.5)) {
        throw DivergenceError("time spread diverges for beta <= 1/2");
    }
    // log of int_0^inf w^p exp(-2 w^gamma) dw = Gamma((p+1)/gamma) / (gamma 2^((p+1)/gamma))
    auto log_moment = [gamma](double p) {
        const double a = (p + 1.0) / gamma;
        return std::lgamma(a) - std::log(gamma) - a * std::log(2.0);
    };
    const double base = log_moment(2.0 * beta);
    const double t1 = beta * beta * std::exp(log_moment(2.0 * beta - 2.0) - base);
    const double t2 = 2.0 * beta * gamma * std::exp(log_moment(2.0 * beta + gamma - 2.0) - base);
    const double t3 = gamma * gamma * std::exp(log_moment(2.0 * beta + 2.0 * gamma - 2.0) - base);
    return t1 - t2 + t3;
}

}  // namespace ridgelab
