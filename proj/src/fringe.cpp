#include "nmrenv/fringe.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "nmrenv/error.hpp"
#include "nmrenv/signal_model.hpp"

namespace nmrenv {

double fringe_spacing_model(double m, double h0, std::size_t n, double fs, double d, double f_o) {
    if (!(d > 0.0) || !(f_o > 0.0))
        throw ArgumentError("undelayed pulse has no fringes (d and f_o must be > 0)");
    return m * h0 * static_cast<double>(n) * fs / (d * f_o);
}

std::vector<std::size_t> find_prominent_peaks(const std::vector<double>& values,
                                              const PeakOptions& opts) {
    const std::size_t n = values.size();
    std::vector<std::size_t> peaks;
    if (n < 3) return peaks;

    // Local maxima; a flat top counts once, at its (lower) middle.
    for (std::size_t i = 1; i + 1 < n;) {
        if (values[i] > values[i - 1]) {
            std::size_t j = i;
            while (j + 1 < n && values[j + 1] == values[i]) ++j;
            if (j + 1 < n && values[j + 1] < values[i]) peaks.push_back((i + j) / 2);
            i = j + 1;
        } else {
            ++i;
        }
    }

    const double global = *std::max_element(values.begin(), values.end());
    const double threshold = opts.relative_prominence * global;

    // Prominence: height above the higher of the two lowest points reached
    // before climbing onto a taller sample (or the array edge).
    std::vector<std::size_t> prominent;
    for (std::size_t p : peaks) {
        const double h = values[p];
        double left_min = h;
        for (std::size_t i = p; i-- > 0;) {
            if (values[i] > h) break;
            left_min = std::min(left_min, values[i]);
        }
        double right_min = h;
        for (std::size_t i = p + 1; i < n; ++i) {
            if (values[i] > h) break;
            right_min = std::min(right_min, values[i]);
        }
        if (h - std::max(left_min, right_min) >= threshold) prominent.push_back(p);
    }

    if (opts.min_separation <= 1 || prominent.size() < 2) return prominent;

    std::vector<std::size_t> order(prominent.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[prominent[a]] > values[prominent[b]];
    });
    std::vector<bool> keep(prominent.size(), true);
    for (std::size_t oi : order) {
        if (!keep[oi]) continue;
        for (std::size_t j = 0; j < prominent.size(); ++j) {
            if (j == oi || !keep[j]) continue;
            const auto gap = prominent[j] > prominent[oi] ? prominent[j] - prominent[oi]
                                                          : prominent[oi] - prominent[j];
            if (gap < opts.min_separation) keep[j] = false;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < prominent.size(); ++i)
        if (keep[i]) out.push_back(prominent[i]);
    return out;
}

FringeReport detect_fringes(const Spectrum& spec, const PeakOptions& opts) {
    std::vector<double> re_abs(spec.coeffs.size());
    std::transform(spec.coeffs.begin(), spec.coeffs.end(), re_abs.begin(),
                   [](const Complex& z) { return std::abs(z.real()); });

    FringeReport report;
    report.peak_indices = find_prominent_peaks(re_abs, opts);
    if (report.peak_indices.size() < 2)
        throw NumericalError("insufficient fringes: found " +
                             std::to_string(report.peak_indices.size()) + " peak(s)");

    for (std::size_t i = 1; i < report.peak_indices.size(); ++i)
        report.spacings.push_back(
            static_cast<double>(report.peak_indices[i] - report.peak_indices[i - 1]));
    report.mean_spacing = std::accumulate(report.spacings.begin(), report.spacings.end(), 0.0) /
                          static_cast<double>(report.spacings.size());
    return report;
}

double calibrate_h0(const FringeReport& report, std::size_t n, double fs, double d, double f_o) {
    if (!(report.mean_spacing > 0.0)) throw ArgumentError("calibrate_h0: mean spacing must be > 0");
    // Spacing law at m = 1 with h0 = 1 gives the scale to divide out.
    return report.mean_spacing / fringe_spacing_model(1.0, 1.0, n, fs, d, f_o);
}

FringeReport recover_parameters(const FringeReport& report, const KnownParameters& known,
                                double h0) {
    if (!(report.mean_spacing > 0.0))
        throw ArgumentError("recover_parameters: mean spacing must be > 0");
    if (known.delay_samples.has_value() == known.transfer_freq.has_value())
        throw ArgumentError("recover_parameters: exactly one of delay and transfer frequency must be known");
    if (known.n == 0 || !(known.fs > 0.0)) throw ArgumentError("recover_parameters: bad n or fs");

    const double known_other = known.delay_samples ? *known.delay_samples : *known.transfer_freq;
    if (!(known_other > 0.0)) throw ArgumentError("recover_parameters: known value must be > 0");
    const double unknown =
        h0 * static_cast<double>(known.n) * known.fs / (report.mean_spacing * known_other);

    FringeReport out = report;
    out.h0_estimate = h0;
    if (known.delay_samples)
        out.recovered_transfer_freq = unknown;
    else
        out.recovered_delay_samples = unknown;
    return out;
}

std::vector<double> fringe_envelope(const Spectrum& spec, std::size_t window) {
    const std::size_t n = spec.coeffs.size();
    const std::size_t half = window / 2;
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t lo = k >= half ? k - half : 0;
        const std::size_t hi = std::min(n - 1, k + half);
        double m = 0.0;
        for (std::size_t i = lo; i <= hi; ++i) m = std::max(m, std::abs(spec.coeffs[i].real()));
        out[k] = m;
    }
    return out;
}

PulseStudy run_pulse_study(const PulseStudyParams& p, Evaluation eval) {
    if (p.delay == 0) throw ArgumentError("pulse study: delay must be > 0");
    if (!(p.transfer_freq > 0.0) || 2.0 * p.transfer_freq > p.fs)
        throw ArgumentError("pulse study: need 0 < 2 f_o <= fs");

    struct Setup {
        const char* label;
        std::size_t delay;
        double f_o;
    };
    const std::array<Setup, 3> setups{{{"D", p.delay, p.transfer_freq},
                                       {"2D", 2 * p.delay, p.transfer_freq},
                                       {"D-2fo", p.delay, 2.0 * p.transfer_freq}}};

    PulseStudy study;
    for (const auto& s : setups) {
        RealSignal pulse = synth_rect_pulse(s.delay, p.width, p.n, p.height, p.fs);
        Spectrum spec = forward_discrete(pulse, TransformConfig(s.f_o, p.fs, p.n), eval);
        FringeReport fringes = detect_fringes(spec);
        study.scenarios.push_back(PulseScenario{s.label, s.delay, s.f_o, std::move(pulse),
                                                std::move(spec), std::move(fringes)});
    }

    auto& base = study.scenarios[0];
    study.h0 = calibrate_h0(base.fringes, p.n, p.fs, static_cast<double>(base.delay),
                            base.transfer_freq);
    base.fringes.h0_estimate = study.h0;

    auto& doubled_delay = study.scenarios[1];
    doubled_delay.fringes =
        recover_parameters(doubled_delay.fringes,
                           {p.n, p.fs, std::nullopt, doubled_delay.transfer_freq}, study.h0);
    study.recovered_delay = *doubled_delay.fringes.recovered_delay_samples;

    auto& doubled_fo = study.scenarios[2];
    doubled_fo.fringes = recover_parameters(
        doubled_fo.fringes, {p.n, p.fs, static_cast<double>(doubled_fo.delay), std::nullopt},
        study.h0);
    study.recovered_transfer_freq = *doubled_fo.fringes.recovered_transfer_freq;
    return study;
}

}  // namespace nmrenv
