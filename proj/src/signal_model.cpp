#include "nmrenv/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "nmrenv/error.hpp"

namespace nmrenv {

namespace {

constexpr double kBoltzmann = 1.380649e-23;  // J/K, exact (SI 2019)
constexpr double kZeroCelsius = 273.15;

// Independent stream per noise component so that toggling one component
// leaves the others bit-identical.
std::mt19937_64 component_engine(std::uint64_t seed, std::uint32_t component) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      component};
    return std::mt19937_64(seq);
}

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0)) throw ArgumentError(std::string(name) + " must be >= 0");
}

}  // namespace

RealSignal ComplexSignal::real() const {
    RealSignal out{std::vector<double>(samples.size()), fs, t0};
    std::transform(samples.begin(), samples.end(), out.samples.begin(),
                   [](const Complex& z) { return z.real(); });
    return out;
}

RealSignal ComplexSignal::imag() const {
    RealSignal out{std::vector<double>(samples.size()), fs, t0};
    std::transform(samples.begin(), samples.end(), out.samples.begin(),
                   [](const Complex& z) { return z.imag(); });
    return out;
}

RealSignal ComplexSignal::amplitude() const {
    RealSignal out{std::vector<double>(samples.size()), fs, t0};
    std::transform(samples.begin(), samples.end(), out.samples.begin(),
                   [](const Complex& z) { return std::abs(z); });
    return out;
}

RealSignal ComplexSignal::phase() const {
    RealSignal out{std::vector<double>(samples.size()), fs, t0};
    std::transform(samples.begin(), samples.end(), out.samples.begin(), [](const Complex& z) {
        const double a = std::arg(z);
        return a == -std::numbers::pi ? std::numbers::pi : a;
    });
    return out;
}

ComplexSignal to_complex(const RealSignal& x) {
    ComplexSignal out{std::vector<Complex>(x.size()), x.fs, x.t0};
    std::copy(x.samples.begin(), x.samples.end(), out.samples.begin());
    return out;
}

void validate(const RealSignal& x, const char* what, bool require_samples) {
    if (!(x.fs > 0.0) || !std::isfinite(x.fs))
        throw ArgumentError(std::string(what) + ": sampling frequency must be positive");
    if (require_samples && x.empty()) throw ArgumentError(std::string(what) + ": empty signal");
}

void validate(const ComplexSignal& x, const char* what, bool require_samples) {
    if (!(x.fs > 0.0) || !std::isfinite(x.fs))
        throw ArgumentError(std::string(what) + ": sampling frequency must be positive");
    if (require_samples && x.empty()) throw ArgumentError(std::string(what) + ": empty signal");
}

double FidParams::peak_amplitude() const { return std::numbers::pi * std::sin(alpha) * m0; }

void FidParams::validate() const {
    if (!(t2 > 0.0)) throw ArgumentError("FidParams: t2 must be > 0");
    require_nonnegative(delta_omega0, "FidParams: delta_omega0");
    require_nonnegative(m0, "FidParams: m0");
}

NoiseSpec NoiseSpec::silent() {
    NoiseSpec s;
    s.rician.amplitude = 0.0;
    s.gaussian.amplitude = 0.0;
    s.johnson.resistance_ohm = 0.0;
    s.harmonic.amplitude = 0.0;
    return s;
}

void NoiseSpec::validate() const {
    require_nonnegative(rician.scale, "rician.scale");
    require_nonnegative(rician.amplitude, "rician.amplitude");
    require_nonnegative(gaussian.std, "gaussian.std");
    require_nonnegative(gaussian.amplitude, "gaussian.amplitude");
    require_nonnegative(johnson.resistance_ohm, "johnson.resistance_ohm");
    require_nonnegative(johnson.bandwidth_hz, "johnson.bandwidth_hz");
    require_nonnegative(harmonic.amplitude, "harmonic.amplitude");
    if (johnson.temperature_c + kZeroCelsius < 0.0)
        throw ArgumentError("johnson.temperature_c is below absolute zero");
}

double johnson_rms(const NoiseSpec::Johnson& j) {
    return std::sqrt(4.0 * kBoltzmann * (j.temperature_c + kZeroCelsius) * j.resistance_ohm *
                     j.bandwidth_hz);
}

double lorentzian_density(double omega, const FidParams& params) {
    const double dw = params.delta_omega0;
    if (dw == 0.0) throw ArgumentError("degenerate Lorentzian: delta_omega0 == 0");
    if (!(dw > 0.0)) throw ArgumentError("Lorentzian half-width must be positive");
    const double off = omega - params.omega0;
    return params.m0 * dw / (dw * dw + off * off);
}

std::size_t sample_count(double fs, double duration) {
    if (!(fs > 0.0)) throw ArgumentError("sampling frequency must be positive");
    if (!(duration > 0.0)) throw ArgumentError("duration must be positive");
    return static_cast<std::size_t>(std::floor(duration * fs)) + 1;
}

ComplexSignal synth_fid(const FidParams& params, Frame frame, double fs, double duration) {
    params.validate();
    const std::size_t n = sample_count(fs, duration);
    const double peak = params.peak_amplitude();
    const double rate = params.effective_decay_rate();

    ComplexSignal out{std::vector<Complex>(n), fs, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        const double phase =
            params.phase0 + (frame == Frame::laboratory ? params.omega0 * t : 0.0);
        out.samples[i] = std::polar(peak * std::exp(-rate * t), phase);
    }
    return out;
}

RealSignal fid_envelope(const FidParams& params, double fs, double t0, std::size_t n) {
    params.validate();
    RealSignal out{std::vector<double>(n), fs, t0};
    const double peak = params.peak_amplitude();
    const double rate = params.effective_decay_rate();
    for (std::size_t i = 0; i < n; ++i) {
        const double t = out.time(i);
        out.samples[i] = t < 0.0 ? 0.0 : peak * std::exp(-rate * t);
    }
    return out;
}

RealSignal gen_noise(const NoiseSpec& spec, std::size_t n, double fs) {
    spec.validate();
    if (n == 0) throw ArgumentError("gen_noise: n must be > 0");
    if (!(fs > 0.0)) throw ArgumentError("gen_noise: sampling frequency must be positive");

    RealSignal out{std::vector<double>(n, 0.0), fs, 0.0};
    auto& y = out.samples;

    // Rician: noncentral chi with two degrees of freedom.
    if (spec.rician.amplitude > 0.0) {
        auto eng = component_engine(spec.seed, 1);
        std::normal_distribution<double> z(0.0, 1.0);
        std::vector<double> r(n);
        for (auto& v : r) {
            const double a = z(eng) + spec.rician.noncentrality;
            const double b = z(eng);
            v = spec.rician.scale * std::hypot(a, b);
        }
        double mean = 0.0;
        for (double v : r) mean += v;
        mean /= static_cast<double>(n);
        double peak = 0.0;
        for (auto& v : r) {
            v -= mean;
            peak = std::max(peak, std::abs(v));
        }
        if (peak > 0.0) {
            const double g = spec.rician.amplitude / peak;
            for (std::size_t i = 0; i < n; ++i) y[i] += g * r[i];
        }
    }

    if (spec.gaussian.amplitude > 0.0 && spec.gaussian.std > 0.0) {
        auto eng = component_engine(spec.seed, 2);
        std::normal_distribution<double> z(0.0, 1.0);
        const double g = spec.gaussian.amplitude * spec.gaussian.std;
        for (auto& v : y) v += g * z(eng);
    }

    const double jrms = johnson_rms(spec.johnson);
    if (jrms > 0.0) {
        auto eng = component_engine(spec.seed, 3);
        std::normal_distribution<double> z(0.0, 1.0);
        for (auto& v : y) v += jrms * z(eng);
    }

    if (spec.harmonic.amplitude > 0.0) {
        const double w = 2.0 * std::numbers::pi * spec.harmonic.freq;
        for (std::size_t i = 0; i < n; ++i)
            y[i] += spec.harmonic.amplitude * std::sin(w * static_cast<double>(i) / fs);
    }
    return out;
}

RealSignal synth_rect_pulse(std::size_t delay, std::size_t width, std::size_t n_total,
                            double height, double fs) {
    if (!(fs > 0.0)) throw ArgumentError("synth_rect_pulse: sampling frequency must be positive");
    if (delay > n_total || width > n_total - delay)
        throw ArgumentError("synth_rect_pulse: delay + width exceeds n_total");
    RealSignal out{std::vector<double>(n_total, 0.0), fs, 0.0};
    std::fill_n(out.samples.begin() + static_cast<std::ptrdiff_t>(delay), width, height);
    return out;
}

RealSignal add_signals(const RealSignal& a, const RealSignal& b) {
    validate(a, "add_signals", false);
    validate(b, "add_signals", false);
    if (a.fs != b.fs) throw ArgumentError("add_signals: sampling frequencies differ");
    if (a.size() != b.size()) throw ArgumentError("add_signals: lengths differ");
    RealSignal out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += b.samples[i];
    return out;
}

}  // namespace nmrenv
