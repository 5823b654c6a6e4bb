#include "nmrenv/timescale.hpp"

#include <algorithm>
#include <cmath>

#include "nmrenv/error.hpp"
#include "nmrenv/fft.hpp"

namespace nmrenv {

ScaleFactor::ScaleFactor(std::size_t m) : m_(m) {
    if (m == 0) throw ArgumentError("scale factor must be >= 1");
}

RealSignal zero_pad(const RealSignal& x, ScaleFactor m) {
    validate(x, "zero_pad", false);
    RealSignal out{x.samples, x.fs, x.t0};
    out.samples.resize(x.size() * m.value(), 0.0);
    return out;
}

double interpolate_linear(const RealSignal& x, double pos) {
    const auto n = x.size();
    if (n == 0) throw ArgumentError("interpolate_linear: empty signal");
    if (pos <= 0.0) return x.samples.front();
    const double last = static_cast<double>(n - 1);
    if (pos >= last) return x.samples.back();
    const double base = std::floor(pos);
    const auto i = static_cast<std::size_t>(base);
    const double frac = pos - base;
    if (frac == 0.0) return x.samples[i];
    return x.samples[i] + frac * (x.samples[i + 1] - x.samples[i]);
}

RealSignal scale_time(const RealSignal& x, ScaleFactor m) {
    validate(x, "scale_time", false);
    if (x.empty()) throw ArgumentError("scale_time: empty signal");
    const std::size_t factor = m.value();
    const std::size_t n_out = (x.size() + factor - 1) / factor;
    RealSignal out{std::vector<double>(n_out), x.fs, x.t0};
    for (std::size_t n = 0; n < n_out; ++n)
        out.samples[n] = interpolate_linear(x, static_cast<double>(n) * static_cast<double>(factor));
    return out;
}

std::size_t dominant_bin(const RealSignal& x) {
    validate(x, "dominant_bin");
    if (x.size() < 2) throw ArgumentError("dominant_bin: need at least 2 samples");
    ComplexSignal spec = to_complex(x);
    fft::transform(spec.samples, fft::Direction::forward);
    std::size_t best = 1;
    for (std::size_t k = 2; k <= x.size() / 2; ++k)
        if (std::abs(spec.samples[k]) > std::abs(spec.samples[best])) best = k;
    return best;
}

double fit_decay_constant(const RealSignal& x, double t_from, double t_to, double floor) {
    validate(x, "fit_decay_constant");
    const double peak = *std::max_element(x.samples.begin(), x.samples.end());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = x.time(i);
        const double v = x.samples[i];
        if (t < t_from || t > t_to || !(v > floor * peak)) continue;
        const double y = std::log(v);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        ++used;
    }
    if (used < 2) throw NumericalError("fit_decay_constant: fewer than two usable samples");
    const double n = static_cast<double>(used);
    const double denom = n * stt - st * st;
    const double slope = (n * sty - st * sy) / denom;
    if (!(denom > 0.0) || !(slope < 0.0))
        throw NumericalError("fit_decay_constant: signal does not decay");
    return -1.0 / slope;
}

std::size_t sign_changes(const RealSignal& x) {
    std::size_t changes = 0;
    int last = 0;
    for (double v : x.samples) {
        const int s = (v > 0.0) - (v < 0.0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace nmrenv
