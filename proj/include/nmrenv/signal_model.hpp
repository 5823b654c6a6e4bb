#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>

#include "nmrenv/signal.hpp"

namespace nmrenv {

/// Physical parameters of the Lorentzian-broadened FID model.
///
/// The defaults describe the 5 Hz / 10 V / T2* = 250 ms synthetic study:
/// peak amplitude pi * sin(alpha) * m0 = 10 V and 1/t2 + delta_omega0 = 4 s^-1.
struct FidParams {
    double m0 = 10.0 / std::numbers::pi;     ///< equilibrium magnetization (volts-equivalent)
    double alpha = std::numbers::pi / 2.0;   ///< flip angle, rad
    double omega0 = 2.0 * std::numbers::pi * 5.0;  ///< Larmor angular frequency, rad/s
    double t2 = 0.5;                          ///< transverse relaxation time, s
    double delta_omega0 = 2.0;                ///< Lorentzian half-width, rad/s
    double phase0 = 0.0;                      ///< initial phase, rad

    /// 1/T2* = 1/t2 + delta_omega0.
    double effective_decay_rate() const { return 1.0 / t2 + delta_omega0; }
    double t2_star() const { return 1.0 / effective_decay_rate(); }
    /// pi * sin(alpha) * m0, the FID value at t = 0.
    double peak_amplitude() const;

    void validate() const;
};

enum class Frame { laboratory, rotating };

/// Composite noise model: Rician + Gaussian + Johnson + mains harmonic.
struct NoiseSpec {
    struct Rician {
        double noncentrality = 1.0;
        double scale = 0.3;
        double amplitude = 7.0;  ///< peak |sample| after mean removal, V
    };
    struct Gaussian {
        double std = 0.15;
        double amplitude = 3.0;  ///< multiplicative gain on std-scaled noise
    };
    struct Johnson {
        double temperature_c = 43.0;
        double resistance_ohm = 50.0;
        double bandwidth_hz = 300.0;
    };
    struct Harmonic {
        double freq = 50.0;
        double amplitude = 0.3;
    };

    Rician rician;
    Gaussian gaussian;
    Johnson johnson;
    Harmonic harmonic;
    std::uint64_t seed = 20240601;

    /// Every component disabled; handy as a starting point in tests.
    static NoiseSpec silent();

    void validate() const;
};

/// RMS thermal noise voltage sqrt(4 k_B T R df).
double johnson_rms(const NoiseSpec::Johnson& j);

/// M0 * dw / (dw^2 + (omega - omega0)^2). Throws ArgumentError when dw == 0.
double lorentzian_density(double omega, const FidParams& params);

/// Number of samples covering [0, duration] at fs: floor(duration * fs) + 1.
std::size_t sample_count(double fs, double duration);

ComplexSignal synth_fid(const FidParams& params, Frame frame, double fs, double duration);

/// The closed-form envelope pi sin(alpha) M0 exp(-t/T2*) sampled at t0 + i/fs;
/// zero for t < 0.
RealSignal fid_envelope(const FidParams& params, double fs, double t0, std::size_t n);

RealSignal gen_noise(const NoiseSpec& spec, std::size_t n, double fs);

RealSignal synth_rect_pulse(std::size_t delay, std::size_t width, std::size_t n_total,
                            double height, double fs);

RealSignal add_signals(const RealSignal& a, const RealSignal& b);

}  // namespace nmrenv
