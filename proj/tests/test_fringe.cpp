#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "nmrenv/error.hpp"
#include "nmrenv/fringe.hpp"
#include "nmrenv/signal_model.hpp"

using namespace nmrenv;

namespace {

FringeReport pulse_fringes(std::size_t delay, double f_o, std::size_t n = 1000) {
    const auto pulse = synth_rect_pulse(delay, 4, n, 1.0, 100.0);
    return detect_fringes(forward_discrete(pulse, TransformConfig(f_o, 100.0, n)));
}

double relative_std(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / v.size()) / mean;
}

}  // namespace

TEST(SpacingModel, ArithmeticAndHomogeneity) {
    EXPECT_DOUBLE_EQ(fringe_spacing_model(1, 1, 100, 100, 10, 10), 100.0);
    const double base = fringe_spacing_model(1, 0.4, 1000, 100, 50, 7);
    EXPECT_DOUBLE_EQ(fringe_spacing_model(1, 0.4, 1000, 100, 100, 7), base / 2);
    EXPECT_DOUBLE_EQ(fringe_spacing_model(1, 0.4, 1000, 100, 50, 14), base / 2);
    EXPECT_DOUBLE_EQ(fringe_spacing_model(3, 0.4, 1000, 100, 50, 7), 3 * base);
    EXPECT_DOUBLE_EQ(fringe_spacing_model(1, 0.4, 2000, 100, 50, 7), 2 * base);
    EXPECT_DOUBLE_EQ(fringe_spacing_model(1, 0.4, 1000, 300, 50, 7), 3 * base);
    EXPECT_THROW(fringe_spacing_model(1, 1, 100, 100, 0, 10), ArgumentError);
}

TEST(Peaks, ProminenceAndSeparation) {
    const std::vector<double> v{0, 5, 0, 0.2, 0.1, 3, 2.9, 3, 0, 9, 0};
    // 0.2 fails the 10% prominence bar; the 3-2.9-3 pair sits exactly 2 bins apart.
    EXPECT_EQ(find_prominent_peaks(v), (std::vector<std::size_t>{1, 5, 7, 9}));
    EXPECT_EQ(find_prominent_peaks(v, {0.1, 3}), (std::vector<std::size_t>{1, 5, 9}));
    EXPECT_TRUE(find_prominent_peaks({1, 2}).empty());
    EXPECT_TRUE(find_prominent_peaks({3, 1, 1, 1, 3}).empty());
}

TEST(DetectFringes, ConstantSpectrumHasNone) {
    Spectrum s{std::vector<Complex>(50, Complex(1.0, 0.0)), TransformConfig(1.0, 10.0, 50)};
    EXPECT_THROW(detect_fringes(s), NumericalError);
}

TEST(DetectFringes, UniformSpacingAndHalvingWithDelay) {
    const auto d = pulse_fringes(100, 10.0), d2 = pulse_fringes(200, 10.0);
    EXPECT_LT(relative_std(d.spacings), 0.10);
    EXPECT_LT(relative_std(d2.spacings), 0.10);
    EXPECT_NEAR(d2.mean_spacing / d.mean_spacing, 0.5, 0.05);
}

TEST(DetectFringes, CountDoesNotDropWithDelay) {
    std::size_t last = 0;
    for (std::size_t delay : {50u, 100u, 200u, 400u}) {
        const auto f = pulse_fringes(delay, 10.0);
        EXPECT_GE(f.peak_indices.size(), last);
        last = f.peak_indices.size();
    }
}

TEST(RecoverParameters, ExactOnModelSpacing) {
    FringeReport r;
    r.mean_spacing = fringe_spacing_model(1, 0.5, 1000, 100, 137, 10);
    const auto d = recover_parameters(r, {1000, 100, std::nullopt, 10.0}, 0.5);
    EXPECT_NEAR(*d.recovered_delay_samples, 137.0, 1e-9);
    const auto f = recover_parameters(r, {1000, 100, 137.0, std::nullopt}, 0.5);
    EXPECT_NEAR(*f.recovered_transfer_freq, 10.0, 1e-12);
    EXPECT_THROW(recover_parameters(r, {1000, 100, 1.0, 1.0}, 0.5), ArgumentError);
}

TEST(RecoverParameters, DelayFromCalibratedH0) {
    const auto ref = pulse_fringes(100, 10.0);
    const double h0 = calibrate_h0(ref, 1000, 100, 100, 10.0);
    for (std::size_t d : {150u, 200u, 300u}) {
        const auto got = recover_parameters(pulse_fringes(d, 10.0), {1000, 100, std::nullopt, 10.0}, h0);
        EXPECT_NEAR(*got.recovered_delay_samples / d, 1.0, 0.15) << d;
    }
    const auto a = recover_parameters(pulse_fringes(120, 10.0), {1000, 100, std::nullopt, 10.0}, h0);
    const auto b = recover_parameters(pulse_fringes(240, 10.0), {1000, 100, std::nullopt, 10.0}, h0);
    EXPECT_NEAR(*b.recovered_delay_samples / *a.recovered_delay_samples, 2.0, 0.2);
}

TEST(RecoverParameters, H0StableAcrossDelays) {
    const double h1 = calibrate_h0(pulse_fringes(100, 10.0), 1000, 100, 100, 10.0);
    const double h2 = calibrate_h0(pulse_fringes(200, 10.0), 1000, 100, 200, 10.0);
    EXPECT_NEAR(h2 / h1, 1.0, 0.15);
}

TEST(PulseStudy, ThreeScenariosWithHalvedSpacings) {
    const auto s = run_pulse_study(PulseStudyParams{});
    ASSERT_EQ(s.scenarios.size(), 3u);
    EXPECT_EQ(s.scenarios[0].pulse.fs, 100.0);
    const double base = s.scenarios[0].fringes.mean_spacing;
    EXPECT_NEAR(s.scenarios[1].fringes.mean_spacing / base, 0.5, 0.05);
    EXPECT_NEAR(s.scenarios[2].fringes.mean_spacing / base, 0.5, 0.05);
    EXPECT_NEAR(s.recovered_delay / 200.0, 1.0, 0.15);
    EXPECT_NEAR(s.recovered_transfer_freq / 20.0, 1.0, 0.15);
    EXPECT_TRUE(s.scenarios[0].fringes.h0_estimate.has_value());
}

TEST(PulseStudy, RejectsBadParameters) {
    PulseStudyParams p;
    p.delay = 0;
    EXPECT_THROW(run_pulse_study(p), ArgumentError);
    p = {};
    p.transfer_freq = 60.0;
    EXPECT_THROW(run_pulse_study(p), ArgumentError);
}

TEST(FringeEnvelope, MovingMaximum) {
    Spectrum s{{Complex(1, 0), Complex(-3, 0), Complex(0, 5), Complex(2, 0), Complex(0, 0), Complex(0, 0)},
               TransformConfig(1.0, 10.0, 6)};
    EXPECT_EQ(fringe_envelope(s, 3), (std::vector<double>{3, 3, 3, 2, 2, 0}));
}
