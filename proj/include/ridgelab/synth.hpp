#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace ridgelab {

using cdouble = std::complex<double>;

/// Deterministic test signal with its analytic ground truth.
///
/// Times are t_j = j dt. For tone and fm the analytic samples are exact; for
/// chirp and gaussian-envelope they are the usual slowly-modulated
/// approximation a(t) exp(i phi(t)).
struct SyntheticSignal {
    std::string kind;
    double dt = 1.0;
    std::vector<double> x;
    std::vector<cdouble> analytic;
    std::vector<double> omega;
    std::vector<double> upsilon;
    std::vector<cdouble> rho2;

    double time(std::size_t j) const { return static_cast<double>(j) * dt; }
};

/// a cos(omega0 t + phase).
SyntheticSignal make_tone(std::size_t n, double dt, double amplitude, double omega0,
                          double phase = 0.0);

/// Analytic FM/AM pair with complex instantaneous frequency
/// eta(t) = omega0 (1 - m exp(i omega1 t)): omega = omega0 (1 - m cos omega1 t) and
/// upsilon = omega0 m sin omega1 t.
SyntheticSignal make_fm(std::size_t n, double dt, double amplitude, double omega0, double m,
                        double omega1);

/// a cos(omega0 t + q t^2 / 2).
SyntheticSignal make_chirp(std::size_t n, double dt, double amplitude, double omega0, double q);

/// a exp(-(t - t_c)^2 / (2 width^2)) cos(omega0 t), with t_c the middle of the record.
SyntheticSignal make_gaussian_envelope(std::size_t n, double dt, double amplitude, double omega0,
                                       double width);

}  // namespace ridgelab
