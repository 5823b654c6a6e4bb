#pragma once

#include <cstddef>

#include "nmrenv/signal.hpp"

namespace nmrenv {

/// Integer time-scaling factor M >= 1.
class ScaleFactor {
public:
    explicit ScaleFactor(std::size_t m);
    std::size_t value() const { return m_; }

private:
    std::size_t m_;
};

/// Appends (M - 1) * N zeros; the first N samples are x unchanged.
RealSignal zero_pad(const RealSignal& x, ScaleFactor m);

/// Compresses x in time by M at an unchanged sampling frequency:
/// out[n] = x(n * M) with linear interpolation between samples,
/// for n < ceil(N / M). No anti-alias filtering.
RealSignal scale_time(const RealSignal& x, ScaleFactor m);

/// Linear interpolation of x at fractional sample position `pos`;
/// positions outside [0, N-1] clamp to the edge samples.
double interpolate_linear(const RealSignal& x, double pos);

/// Index of the largest |DFT| bin among 1..floor(N/2).
std::size_t dominant_bin(const RealSignal& x);

/// tau of the least-squares line ln x(t) = a - t / tau over samples with
/// t in [t_from, t_to] and x(t) > floor * max(x). Throws NumericalError with
/// fewer than two usable samples or a non-decaying fit.
double fit_decay_constant(const RealSignal& x, double t_from, double t_to, double floor = 1e-6);

/// Sign changes between consecutive non-zero samples.
std::size_t sign_changes(const RealSignal& x);

}  // namespace nmrenv
