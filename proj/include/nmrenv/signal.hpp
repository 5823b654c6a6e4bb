#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nmrenv {

using Complex = std::complex<double>;

/// Uniformly sampled real waveform. Sample i sits at t0 + i / fs.
struct RealSignal {
    std::vector<double> samples;
    double fs = 1.0;
    double t0 = 0.0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double time(std::size_t i) const { return t0 + static_cast<double>(i) / fs; }
};

/// Uniformly sampled complex waveform (analytic signals, FID phasors).
struct ComplexSignal {
    std::vector<Complex> samples;
    double fs = 1.0;
    double t0 = 0.0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double time(std::size_t i) const { return t0 + static_cast<double>(i) / fs; }

    RealSignal real() const;
    RealSignal imag() const;
    /// Instantaneous amplitude |z[n]|.
    RealSignal amplitude() const;
    /// Instantaneous phase arg z[n] in (-pi, pi].
    RealSignal phase() const;
};

ComplexSignal to_complex(const RealSignal& x);

/// Throws ArgumentError unless fs > 0 (and, when required, samples nonempty).
void validate(const RealSignal& x, const char* what, bool require_samples = true);
void validate(const ComplexSignal& x, const char* what, bool require_samples = true);

}  // namespace nmrenv
