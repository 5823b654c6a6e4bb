#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nmrenv/error.hpp"
#include "nmrenv/quadrature.hpp"
#include "nmrenv/signal_model.hpp"
#include "nmrenv/transform.hpp"
#include "oracles.hpp"

using namespace nmrenv;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

void expect_close(const std::vector<Complex>& a, const std::vector<std::complex<double>>& b,
                  double rel) {
    ASSERT_EQ(a.size(), b.size());
    const double scale = std::max(1.0, max_abs(a));
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE(std::abs(a[i] - b[i]), rel * scale) << i;
}

RealSignal random_signal(std::size_t n, std::uint64_t seed, double fs = 100.0) {
    return {oracle::random_vector(n, seed), fs, 0.0};
}

}  // namespace

TEST(TransformConfig, DerivedQuantities) {
    TransformConfig c(5.0, 100.0, 10);
    EXPECT_DOUBLE_EQ(c.ratio(), 0.05);
    EXPECT_DOUBLE_EQ(c.delta_psi(), kTwoPi * 0.05);
    EXPECT_THROW(TransformConfig(0.0, 100.0, 10), ArgumentError);
    EXPECT_THROW(TransformConfig(101.0, 100.0, 10), ArgumentError);
    EXPECT_THROW(TransformConfig(5.0, 100.0, 0), ArgumentError);
}

TEST(ForwardDiscrete, TrivialCases) {
    const TransformConfig c(3.0, 10.0, 8);
    const auto z = forward_discrete(RealSignal{std::vector<double>(8, 0.0), 10.0, 0.0}, c);
    for (const auto& v : z.coeffs) EXPECT_EQ(v, Complex{});
    const auto one = forward_discrete(RealSignal{{2.5}, 10.0, 0.0}, TransformConfig(3.0, 10.0, 1));
    EXPECT_EQ(one.coeffs[0], Complex(2.5, 0.0));
    EXPECT_THROW(forward_discrete(RealSignal{{1, 2}, 10.0, 0.0}, c), ArgumentError);
}

TEST(ForwardDiscrete, RatioOneIsTheDft) {
    for (std::size_t n = 1; n <= 16; ++n) {
        const auto x = random_signal(n, 100 + n);
        const auto spec = forward_discrete(x, TransformConfig(100.0, 100.0, n));
        expect_close(spec.coeffs, oracle::dft(x.samples), 1e-10);
    }
}

TEST(ForwardDiscrete, MatchesBruteForceAtFractionalRatio) {
    for (double r : {0.05, 0.3, 0.77}) {
        for (std::size_t n : {7u, 64u, 301u}) {
            const auto x = random_signal(n, n);
            const auto spec = forward_discrete(x, TransformConfig(r * 100.0, 100.0, n));
            expect_close(spec.coeffs, oracle::kernel_sum(x.samples, r, -1), 1e-10);
        }
    }
}

TEST(ForwardDiscrete, Linearity) {
    const std::size_t n = 200;
    const TransformConfig c(7.0, 100.0, n);
    const auto x = random_signal(n, 1), y = random_signal(n, 2);
    RealSignal combo{std::vector<double>(n), 100.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) combo.samples[i] = 2.5 * x.samples[i] - 0.75 * y.samples[i];
    const auto fx = forward_discrete(x, c), fy = forward_discrete(y, c), fc = forward_discrete(combo, c);
    const double scale = max_abs(fc.coeffs);
    for (std::size_t k = 0; k < n; ++k)
        EXPECT_LE(std::abs(fc.coeffs[k] - (2.5 * fx.coeffs[k] - 0.75 * fy.coeffs[k])), 1e-10 * scale);
}

TEST(ForwardDiscrete, ConjugateIsFlippedKernel) {
    for (std::size_t n = 1; n <= 16; ++n) {
        const auto x = random_signal(n, 40 + n);
        const auto spec = forward_discrete(x, TransformConfig(23.0, 100.0, n));
        const auto flipped = oracle::kernel_sum(x.samples, 0.23, +1);
        for (std::size_t k = 0; k < n; ++k)
            EXPECT_LE(std::abs(std::conj(spec.coeffs[k]) - flipped[k]), 1e-10 * std::max(1.0, std::abs(flipped[k])));
    }
}

TEST(ForwardDiscrete, ChirpZMatchesDirect) {
    for (std::size_t n : {1u, 2u, 3u, 17u, 1000u, 5000u}) {
        for (double r : {0.05, 0.4, 1.0}) {
            const auto x = random_signal(n, 7 * n);
            const TransformConfig c(r * 100.0, 100.0, n);
            const auto d = forward_discrete(x, c, Evaluation::direct);
            const auto z = forward_discrete(x, c, Evaluation::chirp_z);
            const double scale = max_abs(d.coeffs);
            for (std::size_t k = 0; k < n; ++k)
                ASSERT_LE(std::abs(d.coeffs[k] - z.coeffs[k]), 1e-10 * scale) << n << " " << r << " " << k;
        }
    }
}

TEST(ForwardDiscrete, CompensatedLongRecordMatchesExtendedPrecision) {
    const std::size_t n = kCompensatedThreshold + 1234;
    const auto x = random_signal(n, 99);
    const double r = 0.1234567;
    const auto spec = forward_discrete(x, TransformConfig(r * 100.0, 100.0, n), Evaluation::direct);
    const auto fast = forward_discrete(x, TransformConfig(r * 100.0, 100.0, n), Evaluation::chirp_z);
    const double scale = max_abs(spec.coeffs);
    for (std::size_t k : {0u, 1u, 777u, 5000u, 11233u}) {
        oracle::LComplex acc = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const unsigned long long ik = static_cast<unsigned long long>(i) * k;
            const long double turns = static_cast<long double>(r) * static_cast<long double>(ik % n) / n +
                                      static_cast<long double>(r) * static_cast<long double>(ik / n);
            const long double a = -2.0L * std::numbers::pi_v<long double> * (turns - std::floor(turns));
            acc += oracle::LComplex(std::cos(a), std::sin(a)) * static_cast<long double>(x.samples[i]);
        }
        const Complex ref(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
        EXPECT_LE(std::abs(spec.coeffs[k] - ref), 1e-10 * scale) << k;
        EXPECT_LE(std::abs(fast.coeffs[k] - ref), 1e-10 * scale) << k;
    }
}

TEST(InverseDiscrete, TrivialCases) {
    const TransformConfig c(3.0, 10.0, 4);
    const auto z = inverse_discrete(Spectrum{std::vector<Complex>(4), c});
    for (const auto& v : z.samples) EXPECT_EQ(v, Complex{});
    const auto one = inverse_discrete(Spectrum{{Complex(3.0, -1.0)}, TransformConfig(3.0, 10.0, 1)});
    EXPECT_NEAR(std::abs(one.samples[0] - Complex(3.0, -1.0) / kTwoPi), 0.0, 1e-15);
}

TEST(InverseDiscrete, RoundTripAtRatioOneIsScaledIdentity) {
    for (std::size_t n : {1u, 2u, 4u, 8u, 16u, 33u, 64u}) {
        const auto x = random_signal(n, 500 + n);
        for (auto eval : {Evaluation::direct, Evaluation::chirp_z}) {
            const auto y = si_analytic(x, TransformConfig(100.0, 100.0, n), eval);
            for (std::size_t i = 0; i < n; ++i)
                EXPECT_LE(std::abs(y.samples[i] - x.samples[i] / kTwoPi),
                          1e-10 * std::max(1e-300, std::abs(x.samples[i] / kTwoPi)));
        }
    }
}

TEST(InverseDiscrete, MatchesBruteForce) {
    const std::size_t n = 50;
    const auto x = random_signal(n, 3);
    const double r = 0.37;
    std::vector<Complex> coeffs(n);
    for (std::size_t k = 0; k < n; ++k) coeffs[k] = {x.samples[k], -0.5 * x.samples[n - 1 - k]};
    const auto y = inverse_discrete(Spectrum{coeffs, TransformConfig(r * 100.0, 100.0, n)});
    auto ref = oracle::kernel_sum(coeffs, r, +1);
    for (auto& v : ref) v /= kTwoPi * n;
    expect_close(y.samples, ref, 1e-10);
}

TEST(SiAnalytic, ZeroInZeroOut) {
    const auto y = si_analytic(RealSignal{std::vector<double>(10, 0.0), 10.0, 0.0}, TransformConfig(1.0, 10.0, 10));
    for (const auto& v : y.samples) EXPECT_EQ(v, Complex{});
}

TEST(SiAnalytic, KeepsTimeOrigin) {
    RealSignal x{oracle::random_vector(8, 1), 10.0, -0.3};
    EXPECT_EQ(si_analytic(x, TransformConfig(1.0, 10.0, 8)).t0, -0.3);
}

// At r = 1 the round trip is x / (2 pi), so the rotating-frame decay is kept exactly.
TEST(SiAnalytic, RotatingFrameDecayAtRatioOne) {
    FidParams p;
    const auto rot = synth_fid(p, Frame::rotating, 100.0, 3.0).real();
    const auto env = envelope_abs(si_analytic(rot, TransformConfig(100.0, 100.0, rot.size())));
    const auto r = oracle::interior90(env.size());
    std::vector<double> t;
    for (std::size_t i = r.begin; i < r.end; ++i) t.push_back(env.time(i));
    EXPECT_NEAR(oracle::exp_fit_tau(t, oracle::slice(env.samples, r)) / p.t2_star(), 1.0, 0.05);
}

// With the carrier well inside the reconstructed band [0, r fs) the modulus follows the decay.
TEST(SiAnalytic, LaboratoryFidEnvelopeWithCarrierInBand) {
    FidParams p;
    p.t2 = 2.0;
    p.delta_omega0 = 0.1;
    const auto lab = synth_fid(p, Frame::laboratory, 100.0, 6.0).real();
    const auto env = envelope_abs(si_analytic(lab, TransformConfig(20.0, 100.0, lab.size())));
    const auto truth = fid_envelope(p, 100.0, 0.0, lab.size());
    const auto r = oracle::interior90(env.size());
    EXPECT_GE(oracle::pearson(oracle::slice(env.samples, r), oracle::slice(truth.samples, r)), 0.98);
}

TEST(EnvelopeAbs, Properties) {
    ComplexSignal c{std::vector<Complex>(16, std::polar(2.0, 0.7)), 10.0, 0.0};
    for (double v : envelope_abs(c).samples) EXPECT_DOUBLE_EQ(v, 2.0);

    const auto x = random_signal(128, 4);
    const auto a = si_analytic(x, TransformConfig(13.0, 100.0, 128));
    const auto e = envelope_abs(a);
    for (double phi : {0.3, 1.9, -2.4}) {
        ComplexSignal rotated = a;
        for (auto& v : rotated.samples) v *= std::polar(1.0, phi);
        const auto er = envelope_abs(rotated);
        for (std::size_t i = 0; i < e.size(); ++i) {
            EXPECT_GE(e.samples[i], 0.0);
            EXPECT_NEAR(er.samples[i], e.samples[i], 1e-12);
        }
    }
}

TEST(ContinuousClosedForm, ZeroFrequencyAndOrigin) {
    for (double f_o : {0.5, 5.0}) {
        for (double alpha : {0.3, 4.0}) {
            const auto v = continuous_closed_form(TransformDirection::forward, 0.0, f_o, 3 * f_o, alpha);
            const double b = kTwoPi * f_o;
            EXPECT_NEAR(v.real(), alpha / (alpha * alpha + b * b), 1e-15);
            EXPECT_NEAR(v.imag(), 0.0, 1e-15);
        }
    }
    EXPECT_DOUBLE_EQ(continuous_closed_form(TransformDirection::inverse, 0.0, 5.0, 100.0, 1.0).real(), 20.0);
}

TEST(ContinuousClosedForm, MatchesQuadratureOfDampedCosine) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uf(-5.0, 5.0);
    const double f_o = 2.0, f_s = 7.0, alpha = 0.9;
    for (int i = 0; i < 10; ++i) {
        const double f = uf(rng);
        const double w = kTwoPi * f * f_o / f_s;
        const auto re = quad::integrate([&](double t) { return std::cos(kTwoPi * f_o * t) * std::exp(-alpha * t) * std::cos(w * t); },
                                        0.0, 40.0 / alpha);
        const auto im = quad::integrate([&](double t) { return -std::cos(kTwoPi * f_o * t) * std::exp(-alpha * t) * std::sin(w * t); },
                                        0.0, 40.0 / alpha);
        const Complex q(re.value, im.value);
        const auto c = continuous_closed_form(TransformDirection::forward, f, f_o, f_s, alpha);
        EXPECT_LE(std::abs(q - c), 1e-6 * std::abs(c)) << f;
    }
}

TEST(QuadratureOracle, Examples) {
    const double f_o = 3.0, alpha = 1.5, b = kTwoPi * f_o;
    EXPECT_NEAR(continuous_quadrature_oracle(0.0, f_o, f_o, alpha).value.real(), alpha / (alpha * alpha + b * b), 1e-8);
    const auto big = continuous_quadrature_oracle(0.7, 2.0, 9.0, 1e6);
    EXPECT_NEAR(big.value.real() * 1e6, 1.0, 0.01);
    for (double f : {-3.0, -0.4, 0.0, 0.25, 1.0, 2.2, 4.9, 7.5, 10.0, 15.0}) {
        const auto q = continuous_quadrature_oracle(f, 2.0, 7.0, 0.9);
        const auto c = continuous_closed_form(TransformDirection::forward, f, 2.0, 7.0, 0.9);
        EXPECT_LE(std::abs(q.value - c), 1e-6 * std::abs(c)) << f;
    }
}

TEST(QuadratureOracle, AgreesWithIndependentGaussKronrod) {
    const double f = 1.3, f_o = 4.0, f_s = 10.0, alpha = 2.0;
    const double upper = continuous_quadrature_oracle(f, f_o, f_s, alpha).upper_limit;
    const double w = kTwoPi * f * f_o / f_s;
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double re = GK::integrate([&](double t) { return std::cos(kTwoPi * f_o * t) * std::exp(-alpha * t) * std::cos(w * t); },
                                    0.0, upper, 30, 1e-13);
    const double im = GK::integrate([&](double t) { return -std::cos(kTwoPi * f_o * t) * std::exp(-alpha * t) * std::sin(w * t); },
                                    0.0, upper, 30, 1e-13);
    const auto ours = continuous_quadrature_oracle(f, f_o, f_s, alpha).value;
    EXPECT_LE(std::abs(ours - Complex(re, im)), 1e-9 * std::abs(ours));
}

TEST(Quadrature, NonConvergenceThrows) {
    quad::Options o;
    o.max_intervals = 4;
    EXPECT_THROW(quad::integrate([](double t) { return std::sin(1000.0 * t); }, 0.0, 100.0, o), NumericalError);
    const auto r = quad::integrate([](double t) { return t * t; }, 0.0, 3.0);
    EXPECT_NEAR(r.value, 9.0, 1e-12);
}
