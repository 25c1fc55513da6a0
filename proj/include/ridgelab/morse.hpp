#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ridgelab {

using cdouble = std::complex<double>;

/// Generalized Morse wavelet, Psi(w) = a w^beta exp(-w^gamma) for w > 0.
///
/// Normalized so that Psi(peak_frequency()) == 2. Every derived quantity is
/// recomputed from (beta, gamma) on demand; the object holds nothing else.
class MorseWavelet {
public:
    /// Throws ArgumentError unless beta and gamma are finite and positive.
    MorseWavelet(double beta, double gamma);

    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

    /// (beta/gamma)^(1/gamma), radians per unit time at scale 1.
    double peak_frequency() const;
    /// 2 (e gamma / beta)^(beta/gamma).
    double amplitude_constant() const;
    /// sqrt(beta gamma): the dimensionless duration P.
    double duration() const;
    /// Exponent r of the long-time decay |psi(t)| ~ |t|^-r, equal to beta + 1.
    double decay_rate() const;

    /// Psi(omega); zero for omega <= 0.
    double evaluate(double omega) const;

    /// omega^n Psi^(n)(omega) / Psi(omega) for omega > 0.
    ///
    /// Uses the Bell polynomial of the log-derivatives of Psi, each scaled by
    /// omega^k so that the result stays dimensionless. Throws DomainError for
    /// omega <= 0 and ArgumentError for n outside [0, kMaxBellOrder].
    double dimensionless_derivative(int n, double omega) const;

    /// dimensionless_derivative(n, peak_frequency()) with the peak identity
    /// omega^gamma = beta/gamma substituted exactly.
    double peak_derivative(int n) const;

    /// Omega Psi'(omega) = Psi(omega) * dimensionless_derivative(1, omega),
    /// the frequency form of the scale-derivative wavelet.
    double scale_derivative_kernel(double omega) const;

private:
    // omega^k d^k/domega^k ln Psi, expressed through u^gamma = (omega/omega_psi)^gamma.
    std::vector<double> scaled_log_derivatives(int n, double u_pow_gamma) const;

    double beta_;
    double gamma_;
};

/// A wavelet psi(t/s)/s sampled on a uniform grid centred on t = 0.
struct SampledWavelet {
    std::vector<cdouble> values;
    double grid_spacing = 1.0;
    double scale = 1.0;

    /// Time of sample j; the grid runs from -n/2 to n/2 - 1 spacings.
    double time(std::size_t j) const;
};

/// Fraction of the energy of Psi(s omega) lying above the Nyquist frequency of
/// a grid with the given spacing.
double energy_beyond_nyquist(const MorseWavelet& w, double grid_spacing, double scale);

/// Samples psi(t/s)/s by inverse DFT of Psi(s omega) on the positive frequency
/// bins, so the result is the periodized wavelet.
///
/// n_points must be a power of two >= 16 and scale > 0 (ArgumentError).
/// Throws AliasingError when more than 0.1% of the wavelet energy sits above
/// the grid Nyquist frequency.
SampledWavelet sample_time_domain(const MorseWavelet& w, std::size_t n_points,
                                  double grid_spacing, double scale);

/// Cumulative energy of the scale-1 wavelet on the default 2^14-point grid
/// (peak frequency at 1/32 of Nyquist), linearly interpolated between samples.
class EnergyProfile {
public:
    explicit EnergyProfile(const MorseWavelet& w);

    /// Energy in |t| <= half_width over total energy; 1 beyond the grid.
    double fraction(double half_width) const;
    /// Inverse of fraction() by bisection; alpha must lie in (0, 1).
    double support(double alpha) const;

    double grid_spacing() const { return spacing_; }
    double max_half_width() const;

private:
    double spacing_;
    std::vector<double> density_;     // |psi(m h)|^2 for m = 0 .. n/2
    std::vector<double> cumulative_;  // integral of density_ over [0, m h]
};

/// alpha(L): energy fraction of the scale-1 wavelet inside |t| <= L.
/// Requires L >= 0 and beta > 1/2 (ArgumentError / DivergenceError).
double energy_fraction(const MorseWavelet& w, double half_width);

/// L(alpha): inverse of energy_fraction. alpha outside (0,1) is an ArgumentError.
double time_support(const MorseWavelet& w, double alpha);

/// Second moment of |psi(t)|^2 over its energy at scale 1.
///
/// Evaluated as int |Psi'|^2 / int |Psi|^2, which reduces to Gamma functions.
/// Throws DivergenceError for beta <= 1/2.
double time_spread(const MorseWavelet& w);

}  // namespace ridgelab
