#pragma once

// Test-side reference implementations. Nothing here calls into the library.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace oracle {

using cdouble = std::complex<double>;
using big = boost::multiprecision::cpp_bin_float_50;

// Complete Bell polynomials written out by hand, orders 0..4.
inline cdouble bell_explicit(std::span<const cdouble> c, int n) {
    switch (n) {
        case 0:
            return 1.0;
        case 1:
            return c[0];
        case 2:
            return c[0] * c[0] + c[1];
        case 3:
            return c[0] * c[0] * c[0] + 3.0 * c[0] * c[1] + c[2];
        case 4:
            return c[0] * c[0] * c[0] * c[0] + 6.0 * c[0] * c[0] * c[1] + 4.0 * c[0] * c[2] +
                   3.0 * c[1] * c[1] + c[3];
        default:
            return {};
    }
}

// Same polynomials on |c_k|: an upper bound for the size of every term, used
// to express rounding tolerances.
inline double bell_explicit_abs(std::span<const cdouble> c, int n) {
    std::vector<cdouble> mag;
    for (const auto& v : c) {
        mag.emplace_back(std::abs(v));
    }
    return bell_explicit(mag, n).real();
}

// a w^beta exp(-w^gamma) in 50-digit arithmetic.
inline big morse_big(const big& beta, const big& gamma, const big& w) {
    using boost::multiprecision::exp;
    using boost::multiprecision::pow;
    const big a = 2 * pow(exp(big(1)) * gamma / beta, beta / gamma);
    return a * pow(w, beta) * exp(-pow(w, gamma));
}

// w^n Psi^(n)(w) / Psi(w) from a central n-th difference with step h = rel_step * w.
inline double morse_derivative_fd(double beta, double gamma, int n, double w,
                                  double rel_step = 1e-6) {
    const big b(beta);
    const big g(gamma);
    const big x(w);
    const big h = x * big(rel_step);
    big sum = 0;
    big binom = 1;
    for (int k = 0; k <= n; ++k) {
        const big offset = (big(n) / 2 - k) * h;
        const big term = binom * morse_big(b, g, x + offset);
        sum += (k % 2 == 0) ? term : big(-term);
        binom = binom * (n - k) / (k + 1);
    }
    big deriv = sum;
    for (int k = 0; k < n; ++k) {
        deriv /= h;
    }
    big scale = 1;
    for (int k = 0; k < n; ++k) {
        scale *= x;
    }
    return static_cast<double>(deriv * scale / morse_big(b, g, x));
}

// Finite-difference weights for derivatives 0..m at x0 on the nodes xs
// (Fornberg's recursion). weights[k][i] multiplies f(xs[i]) for the k-th derivative.
inline std::vector<std::vector<double>> fd_weights(const std::vector<double>& xs, double x0,
                                                   int m) {
    const std::size_t n = xs.size();
    std::vector<std::vector<double>> c(static_cast<std::size_t>(m) + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min(static_cast<int>(i), m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

// n-th Taylor coefficient (times n!) of the self-demodulated signal
// x(t + tau) exp(-i omega tau) / x(t) at tau = 0, in units of omega^n.
// Uses the samples t - half .. t + half directly.
inline std::vector<cdouble> demodulated_rho(std::span<const cdouble> x, std::size_t t,
                                            double omega, double dt, int n_max, int half) {
    std::vector<double> taus;
    std::vector<cdouble> f;
    for (int k = -half; k <= half; ++k) {
        const double tau = k * dt;
        taus.push_back(tau);
        f.push_back(x[static_cast<std::size_t>(static_cast<long>(t) + k)] *
                    std::exp(cdouble(0.0, -omega * tau)) / x[t]);
    }
    const auto w = fd_weights(taus, 0.0, n_max);
    std::vector<cdouble> rho(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        cdouble acc = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            acc += w[n][i] * f[i];
        }
        rho[n] = acc / std::pow(omega, n);
    }
    return rho;
}

// Smooth, exactly analytic test signal:
// ln x(t) = i omega0 t + sum_k b_k exp(i nu_k t) with 0 < nu_k, so every
// Fourier component sits at omega0 + (non-negative combination of nu_k).
struct SmoothSignal {
    double omega0 = 0.0;
    std::vector<double> nu;
    std::vector<cdouble> b;
    std::vector<cdouble> samples;
};

inline SmoothSignal random_smooth_signal(std::mt19937_64& rng, std::size_t n, double dt) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SmoothSignal s;
    s.omega0 = 2.0 * M_PI / (20.0 + 20.0 * u01(rng)) / dt;
    const int components = 1 + static_cast<int>(3.0 * u01(rng));
    for (int k = 0; k < components; ++k) {
        const double nu = s.omega0 * (0.02 + 0.08 * u01(rng));
        // keep |eta - omega0| = |b| nu below about 0.08 omega0
        const double mag = (0.01 + 0.07 * u01(rng)) * s.omega0 / nu / components;
        s.nu.push_back(nu);
        s.b.push_back(std::polar(mag, 2.0 * M_PI * u01(rng)));
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j) * dt;
        cdouble lg(0.0, s.omega0 * t);
        for (std::size_t k = 0; k < s.nu.size(); ++k) {
            lg += s.b[k] * std::exp(cdouble(0.0, s.nu[k] * t));
        }
        s.samples.push_back(std::exp(lg));
    }
    return s;
}

// psi(t) = (1/2pi) int_0^inf Psi(omega) exp(i omega t) d omega for every t in ts,
// by the trapezoid rule on a fine frequency grid. Psi is written out here from
// its definition, a omega^beta exp(-omega^gamma) with a = 2 (e gamma / beta)^(beta/gamma).
inline std::vector<cdouble> morse_time_domain(double beta, double gamma,
                                              const std::vector<double>& ts, double h = 5e-4) {
    const double a = 2.0 * std::pow(std::exp(1.0) * gamma / beta, beta / gamma);
    const double peak = std::pow(beta / gamma, 1.0 / gamma);
    std::vector<double> spectrum;
    for (double w = 0.0;; w += h) {
        const double v = w > 0.0 ? a * std::exp(beta * std::log(w) - std::pow(w, gamma)) : 0.0;
        spectrum.push_back(v);
        if (w > peak && v < 1e-20) {
            break;
        }
    }
    std::vector<cdouble> out;
    out.reserve(ts.size());
    for (double t : ts) {
        const cdouble step = std::exp(cdouble(0.0, h * t));
        cdouble rot = 1.0;
        cdouble acc = 0.0;
        for (std::size_t k = 0; k < spectrum.size(); ++k) {
            if (k % 256 == 0) {
                rot = std::exp(cdouble(0.0, static_cast<double>(k) * h * t));
            }
            acc += spectrum[k] * rot;
            rot *= step;
        }
        out.push_back(acc * h / (2.0 * M_PI));
    }
    return out;
}

// Direct circular correlation of a periodic real series with (1/s) conj(psi((tau - t)/s)),
// summing the wavelet over `periods` copies of the record on each side.
inline std::vector<cdouble> brute_force_transform(const std::vector<double>& x, double dt,
                                                  double beta, double gamma, double scale,
                                                  int periods) {
    const auto n = static_cast<long>(x.size());
    const long reach = n * periods;
    std::vector<double> ts;
    for (long m = -reach; m <= reach; ++m) {
        ts.push_back(static_cast<double>(m) * dt / scale);
    }
    const auto psi = morse_time_domain(beta, gamma, ts);
    // h[r] = sum over m = r mod n of (dt/s) conj(psi(m dt / s))
    std::vector<cdouble> h(static_cast<std::size_t>(n), 0.0);
    for (long m = -reach; m <= reach; ++m) {
        const long r = ((m % n) + n) % n;
        h[static_cast<std::size_t>(r)] +=
            std::conj(psi[static_cast<std::size_t>(m + reach)]) * dt / scale;
    }
    std::vector<cdouble> out(static_cast<std::size_t>(n), 0.0);
    for (long j = 0; j < n; ++j) {
        cdouble acc = 0.0;
        for (long k = 0; k < n; ++k) {
            const long r = (((k - j) % n) + n) % n;
            acc += h[static_cast<std::size_t>(r)] * x[static_cast<std::size_t>(k)];
        }
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

}  // namespace oracle
