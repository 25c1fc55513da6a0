#include "ridgelab/morse.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ridgelab/error.hpp"
#include "ridgelab/fft.hpp"
#include "support/oracles.hpp"

using ridgelab::MorseWavelet;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

// Reference values from tests/fixtures/morse_time_domain.py (finest grid).
struct SupportFixture {
    double beta;
    double gamma;
    double spread;
    double l50;
    double l95;
    double l99;
    double alpha_at_3;
};

constexpr SupportFixture kSupport[] = {
    {3.0, 3.0, 4.814283449251985, 1.499463638111705, 4.282720597843205, 5.540516052045094,
     0.8257731807201908},
    {20.0, 3.0, 8.542304287255769, 1.975019410544989, 5.72485919483259, 7.508455282786932,
     0.6946282281251032},
    {1.5, 3.0, 4.2124980256537565, 1.4063297078507933, 3.9862848523890957, 5.125141884839513,
     0.8546190128109457},
    {4.0, 2.0, 2.1428571428571423, 0.9840853255382079, 2.87088695782364, 3.7894522891621207,
     0.9593561482372208},
};

}  // namespace

TEST(Morse, RejectsInvalidParameters) {
    EXPECT_THROW(MorseWavelet(0.0, 3.0), ridgelab::ArgumentError);
    EXPECT_THROW(MorseWavelet(3.0, -1.0), ridgelab::ArgumentError);
    EXPECT_THROW(MorseWavelet(std::nan(""), 3.0), ridgelab::ArgumentError);
}

TEST(Morse, PeakValueIsTwo) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> beta(0.6, 20.0);
    std::uniform_real_distribution<double> gamma(0.6, 8.0);
    for (int i = 0; i < 50; ++i) {
        const MorseWavelet w(beta(rng), gamma(rng));
        EXPECT_NEAR(w.evaluate(w.peak_frequency()), 2.0, 4 * 2.0 * kEps);
    }
}

TEST(Morse, ZeroOnNonPositiveFrequencies) {
    const MorseWavelet w(3.0, 3.0);
    EXPECT_EQ(w.evaluate(0.0), 0.0);
    EXPECT_EQ(w.evaluate(-1.0), 0.0);
    EXPECT_EQ(w.scale_derivative_kernel(-2.0), 0.0);
}

TEST(Morse, MatchesDirectFormula) {
    const MorseWavelet w(3.7, 2.2);
    const double a = w.amplitude_constant();
    for (double omega : {0.05, 0.3, 1.0, 1.7, 3.5}) {
        const double direct = a * std::pow(omega, 3.7) * std::exp(-std::pow(omega, 2.2));
        EXPECT_LT(rel_err(w.evaluate(omega), direct), 1e-13) << omega;
    }
}

TEST(Morse, ClosedFormConstants) {
    const MorseWavelet w(3.0, 3.0);
    EXPECT_DOUBLE_EQ(w.peak_frequency(), 1.0);
    EXPECT_DOUBLE_EQ(w.duration(), 3.0);
    EXPECT_DOUBLE_EQ(w.decay_rate(), 4.0);
    EXPECT_DOUBLE_EQ(w.amplitude_constant(), 2.0 * std::exp(1.0));
    EXPECT_NEAR(MorseWavelet(1.5, 3.0).duration(), std::sqrt(4.5), 1e-15);
    EXPECT_DOUBLE_EQ(MorseWavelet(1.0, 1.0).duration(), 1.0);
}

TEST(Morse, DurationMatchesSecondDerivative) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> beta(0.6, 20.0);
    std::uniform_real_distribution<double> gamma(0.6, 8.0);
    for (int i = 0; i < 50; ++i) {
        const MorseWavelet w(beta(rng), gamma(rng));
        const double p2 = w.duration() * w.duration();
        EXPECT_LE(std::abs(p2 + w.peak_derivative(2)), 4 * kEps * p2);
    }
}

TEST(Morse, PeakDerivativeClosedForms) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> beta(0.6, 20.0);
    std::uniform_real_distribution<double> gamma(0.6, 8.0);
    for (int i = 0; i < 50; ++i) {
        const double b = beta(rng);
        const double g = gamma(rng);
        const MorseWavelet w(b, g);
        EXPECT_EQ(w.peak_derivative(0), 1.0);
        EXPECT_EQ(w.peak_derivative(1), 0.0);
        EXPECT_LT(rel_err(w.peak_derivative(3), -(g - 3.0) * b * g), 1e-10);
        EXPECT_LT(rel_err(w.dimensionless_derivative(3, w.peak_frequency()), -(g - 3.0) * b * g),
                  1e-9);
        EXPECT_NEAR(w.peak_derivative(3) / w.peak_derivative(2), g - 3.0, 1e-12 * g);
    }
}

TEST(Morse, ThirdDerivativeRatioExamples) {
    // gamma = 6 with P = 3 and gamma = 1 with P = 3.
    EXPECT_NEAR(MorseWavelet(1.5, 6.0).peak_derivative(3) / MorseWavelet(1.5, 6.0).peak_derivative(2),
                3.0, 1e-14);
    EXPECT_NEAR(MorseWavelet(9.0, 1.0).peak_derivative(3) / MorseWavelet(9.0, 1.0).peak_derivative(2),
                -2.0, 1e-14);
    EXPECT_EQ(MorseWavelet(4.0, 3.0).peak_derivative(3), 0.0);
}

TEST(Morse, FourthDerivativeAtPeakForGammaThree) {
    for (double b : {1.0, 3.0, 5.5, 12.0}) {
        const MorseWavelet w(b, 3.0);
        const double p = w.duration();
        EXPECT_NEAR(w.peak_derivative(4), 3 * std::pow(p, 4) - 6 * b, 1e-12 * std::pow(p, 4));
    }
}

TEST(Morse, DerivativesMatchFiniteDifferences) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> beta(0.6, 20.0);
    std::uniform_real_distribution<double> gamma(0.6, 8.0);
    std::uniform_real_distribution<double> ratio(0.4, 1.8);
    for (int i = 0; i < 20; ++i) {
        const MorseWavelet w(beta(rng), gamma(rng));
        const double omega = ratio(rng) * w.peak_frequency();
        for (int n = 1; n <= 6; ++n) {
            const double got = w.dimensionless_derivative(n, omega);
            const double want = oracle::morse_derivative_fd(w.beta(), w.gamma(), n, omega);
            EXPECT_LE(std::abs(got - want), 1e-6 * std::max(1.0, std::abs(want)))
                << "beta=" << w.beta() << " gamma=" << w.gamma() << " n=" << n;
        }
    }
}

TEST(Morse, DimensionlessDerivativeDomain) {
    const MorseWavelet w(3.0, 3.0);
    EXPECT_THROW(w.dimensionless_derivative(2, 0.0), ridgelab::DomainError);
    EXPECT_THROW(w.dimensionless_derivative(2, -1.0), ridgelab::DomainError);
    EXPECT_THROW(w.dimensionless_derivative(-1, 1.0), ridgelab::ArgumentError);
    EXPECT_EQ(w.dimensionless_derivative(0, 0.7), 1.0);
}

TEST(Morse, UniqueMaximumAtPeak) {
    for (auto [b, g] : {std::pair{3.0, 3.0}, {1.0, 1.0}, {20.0, 6.0}, {0.7, 0.8}}) {
        const MorseWavelet w(b, g);
        const double peak = w.evaluate(w.peak_frequency());
        for (int k = -200; k <= 200; ++k) {
            if (k == 0) {
                continue;
            }
            const double omega = w.peak_frequency() * std::pow(10.0, k / 200.0);
            EXPECT_LT(w.evaluate(omega), peak) << "beta=" << b << " k=" << k;
        }
    }
}

TEST(Morse, HalfPowerPointsFromDuration) {
    // The quadratic approximation of ln Psi is good enough only near gamma = 3,
    // where the cubic term vanishes.
    for (auto [b, g] : {std::pair{3.0, 3.0}, {4.5, 2.0}, {20.0, 3.0}, {2.25, 4.0}, {25.0, 4.0}}) {
        const MorseWavelet w(b, g);
        const double p = w.duration();
        ASSERT_GE(p, 3.0);
        for (double sign : {-1.0, 1.0}) {
            const double r = w.evaluate(w.peak_frequency() * (1.0 + sign / p)) / 2.0;
            EXPECT_NEAR(r, 0.5, 0.15) << "beta=" << b << " gamma=" << g;
        }
    }
}

TEST(Morse, ScaleDerivativeKernel) {
    const MorseWavelet w(4.0, 2.5);
    EXPECT_NEAR(w.scale_derivative_kernel(w.peak_frequency()), 0.0, 1e-15);
    for (double omega : {0.3, 0.9, 1.6, 2.4}) {
        EXPECT_NEAR(w.scale_derivative_kernel(omega),
                    w.evaluate(omega) * w.dimensionless_derivative(1, omega), 1e-13);
    }
    EXPECT_GT(w.scale_derivative_kernel(0.5 * w.peak_frequency()), 0.0);
    EXPECT_LT(w.scale_derivative_kernel(1.5 * w.peak_frequency()), 0.0);
}

TEST(SampledWavelet, ZeroMeanAndAnalytic) {
    const MorseWavelet w(3.0, 3.0);
    const double dt = 1.0;
    const auto sw = ridgelab::sample_time_domain(w, 1024, dt, 8.0);
    ASSERT_EQ(sw.values.size(), 1024u);
    double peak = 0.0;
    ridgelab::cdouble total = 0.0;
    for (const auto& v : sw.values) {
        peak = std::max(peak, std::abs(v));
        total += v;
    }
    EXPECT_LT(std::abs(total) * dt, 1e-10 * peak);

    const auto spectrum = ridgelab::fft::forward(sw.values);
    double neg = 0.0;
    double all = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double e = std::norm(spectrum[k]);
        all += e;
        if (k > spectrum.size() / 2) {
            neg += e;
        }
    }
    EXPECT_LT(neg, 1e-12 * all);
}

TEST(SampledWavelet, CentredOnZero) {
    const MorseWavelet w(3.0, 3.0);
    const auto sw = ridgelab::sample_time_domain(w, 256, 0.5, 4.0);
    EXPECT_DOUBLE_EQ(sw.time(128), 0.0);
    EXPECT_DOUBLE_EQ(sw.time(0), -64.0);
    std::size_t arg = 0;
    for (std::size_t j = 0; j < sw.values.size(); ++j) {
        if (std::abs(sw.values[j]) > std::abs(sw.values[arg])) {
            arg = j;
        }
    }
    EXPECT_EQ(arg, 128u);
    // psi(0) = (1/2pi) int Psi: real and positive.
    EXPECT_GT(sw.values[128].real(), 0.0);
    EXPECT_NEAR(sw.values[128].imag(), 0.0, 1e-12 * sw.values[128].real());
}

TEST(SampledWavelet, ParsevalAgainstFrequencyQuadrature) {
    const MorseWavelet w(4.0, 2.0);
    const double dt = 0.25;
    const double s = 6.0;
    const auto sw = ridgelab::sample_time_domain(w, 4096, dt, s);
    double time_energy = 0.0;
    for (const auto& v : sw.values) {
        time_energy += std::norm(v) * dt;
    }
    // (1/2pi) int_0^inf Psi(s w)^2 dw by composite Simpson on a fine grid.
    const int m = 200000;
    const double top = 12.0 / s;
    const double h = top / m;
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double weight = (k == 0 || k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        acc += weight * std::pow(w.evaluate(s * k * h), 2);
    }
    const double freq_energy = acc * h / 3.0 / (2.0 * M_PI);
    EXPECT_LT(rel_err(time_energy, freq_energy), 1e-8);
}

TEST(SampledWavelet, AlgebraicTailDecay) {
    const MorseWavelet w(2.0, 3.0);
    const std::size_t n = 1 << 16;
    const double dt = M_PI / (8.0 * w.peak_frequency());
    const auto sw = ridgelab::sample_time_domain(w, n, dt, 1.0);
    const std::size_t centre = n / 2;
    const std::size_t t1 = 800;
    const double ratio = std::abs(sw.values[centre + 2 * t1]) / std::abs(sw.values[centre + t1]);
    EXPECT_NEAR(ratio, std::pow(2.0, -w.decay_rate()), 0.02 * std::pow(2.0, -w.decay_rate()));
}

TEST(SampledWavelet, AliasingGuard) {
    const MorseWavelet w(3.0, 3.0);
    EXPECT_THROW(ridgelab::sample_time_domain(w, 256, 1.0, 0.3), ridgelab::AliasingError);
    try {
        ridgelab::sample_time_domain(w, 256, 1.0, 0.3);
    } catch (const ridgelab::AliasingError& e) {
        EXPECT_NE(std::string(e.what()).find("beta=3"), std::string::npos);
    }
    EXPECT_NO_THROW(ridgelab::sample_time_domain(w, 256, 1.0, 2.0));
    EXPECT_THROW(ridgelab::sample_time_domain(w, 100, 1.0, 2.0), ridgelab::ArgumentError);
    EXPECT_THROW(ridgelab::sample_time_domain(w, 8, 1.0, 2.0), ridgelab::ArgumentError);
    EXPECT_THROW(ridgelab::sample_time_domain(w, 256, 1.0, -2.0), ridgelab::ArgumentError);
}

TEST(EnergyProfile, EndpointsAndMonotone) {
    const ridgelab::EnergyProfile profile(MorseWavelet(3.0, 3.0));
    EXPECT_EQ(profile.fraction(0.0), 0.0);
    EXPECT_EQ(profile.fraction(1e9), 1.0);
    EXPECT_NEAR(profile.fraction(0.5 * profile.max_half_width()), 1.0, 1e-6);
    double last = 0.0;
    for (int k = 1; k <= 400; ++k) {
        const double f = profile.fraction(0.03 * k);
        EXPECT_GE(f, last);
        last = f;
    }
    EXPECT_THROW(profile.fraction(-1.0), ridgelab::ArgumentError);
}

TEST(EnergyProfile, MatchesReferenceValues) {
    for (const auto& fx : kSupport) {
        const MorseWavelet w(fx.beta, fx.gamma);
        const ridgelab::EnergyProfile profile(w);
        EXPECT_LT(rel_err(profile.support(0.5), fx.l50), 5e-4) << fx.beta << "," << fx.gamma;
        EXPECT_LT(rel_err(profile.support(0.95), fx.l95), 5e-4) << fx.beta << "," << fx.gamma;
        EXPECT_LT(rel_err(profile.support(0.99), fx.l99), 5e-4) << fx.beta << "," << fx.gamma;
        EXPECT_NEAR(profile.fraction(3.0), fx.alpha_at_3, 2e-4) << fx.beta << "," << fx.gamma;
    }
}

TEST(EnergyProfile, RoundTrips) {
    const MorseWavelet w(3.0, 3.0);
    const ridgelab::EnergyProfile profile(w);
    for (double alpha : {0.01, 0.2, 0.5, 0.9, 0.95, 0.99, 0.999}) {
        EXPECT_NEAR(profile.fraction(profile.support(alpha)), alpha, 1e-6);
    }
    for (double l : {0.5, 1.0, 2.0, 4.0, 6.0}) {
        EXPECT_NEAR(profile.support(profile.fraction(l)), l, 1e-6 * l);
    }
    EXPECT_NEAR(ridgelab::energy_fraction(w, ridgelab::time_support(w, 0.95)), 0.95, 1e-3);
    EXPECT_LT(ridgelab::time_support(w, 1e-6), 1e-3);
    EXPECT_THROW(ridgelab::time_support(w, 0.0), ridgelab::ArgumentError);
    EXPECT_THROW(ridgelab::time_support(w, 1.0), ridgelab::ArgumentError);
    EXPECT_THROW(ridgelab::energy_fraction(w, -0.1), ridgelab::ArgumentError);
}

TEST(TimeSpread, MatchesReferenceValues) {
    for (const auto& fx : kSupport) {
        const MorseWavelet w(fx.beta, fx.gamma);
        EXPECT_LT(rel_err(ridgelab::time_spread(w), fx.spread), 1e-4) << fx.beta;
    }
}

TEST(TimeSpread, MatchesSampledQuadrature) {
    const MorseWavelet w(3.0, 3.0);
    double previous = 0.0;
    for (auto [n, ratio] : {std::pair{std::size_t{1} << 14, 16.0}, {std::size_t{1} << 16, 32.0}}) {
        const double dt = M_PI / (ratio * w.peak_frequency());
        const auto sw = ridgelab::sample_time_domain(w, n, dt, 1.0);
        double num = 0.0;
        double den = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = sw.time(j);
            num += t * t * std::norm(sw.values[j]);
            den += std::norm(sw.values[j]);
        }
        if (previous > 0.0) {
            EXPECT_LT(rel_err(num / den, previous), 1e-4);
        }
        previous = num / den;
        EXPECT_LT(rel_err(ridgelab::time_spread(w), num / den), 1e-4);
    }
}

TEST(TimeSpread, DivergesForSmallBeta) {
    EXPECT_THROW(ridgelab::time_spread(MorseWavelet(0.4, 3.0)), ridgelab::DivergenceError);
    EXPECT_THROW(ridgelab::time_spread(MorseWavelet(0.5, 3.0)), ridgelab::DivergenceError);
    EXPECT_GT(ridgelab::time_spread(MorseWavelet(0.51, 3.0)), 0.0);
}
