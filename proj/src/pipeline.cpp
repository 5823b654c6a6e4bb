#include "nmrenv/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nmrenv/error.hpp"
#include "nmrenv/fft.hpp"
#include "nmrenv/timescale.hpp"

namespace nmrenv {

namespace {

constexpr const char* kTransformLabel = "si-transform";
constexpr const char* kHilbertLabel = "hilbert";

RealSignal scaled(const RealSignal& x, double g) {
    RealSignal out = x;
    for (auto& v : out.samples) v *= g;
    return out;
}

std::optional<double> pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const auto n = static_cast<double>(a.size());
    if (a.size() < 2) return std::nullopt;
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return std::nullopt;
    return sab / std::sqrt(saa * sbb);
}

bool same_grid(const RealSignal& a, const RealSignal& b) {
    return a.fs == b.fs && a.t0 == b.t0 && a.size() == b.size();
}

}  // namespace

void PipelineConfig::validate() const {
    if (downsample_factor == 0) throw ArgumentError("downsample_factor must be >= 1");
    if (transfer_freq && !(*transfer_freq > 0.0))
        throw ArgumentError("transfer_freq must be > 0");
    if (!transfer_freq && !(transfer_ratio > 0.0 && transfer_ratio <= 1.0))
        throw ArgumentError("transfer_ratio must lie in (0, 1]");
}

double PipelineConfig::resolved_transfer_freq(double input_fs) const {
    return transfer_freq ? *transfer_freq : transfer_ratio * input_fs;
}

double analytic_gain(double ratio) {
    if (!(ratio > 0.0)) throw ArgumentError("analytic_gain: ratio must be > 0");
    return 2.0 * std::numbers::pi * std::min(1.0, 2.0 * ratio);
}

RealSignal preprocess(const RealSignal& x, const PipelineConfig& cfg) {
    validate(x, "preprocess");
    cfg.validate();

    std::vector<double> y(cfg.delay_samples, 0.0);
    y.insert(y.end(), x.samples.begin(), x.samples.end());

    if (cfg.remove_mean) {
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(y.size());
        for (auto& v : y) v -= mean;
    }

    const std::size_t m = cfg.downsample_factor;
    RealSignal out;
    out.fs = x.fs / static_cast<double>(m);
    out.t0 = x.t0 - static_cast<double>(cfg.delay_samples) / x.fs;
    out.samples.reserve((y.size() + m - 1) / m);
    for (std::size_t i = 0; i < y.size(); i += m) out.samples.push_back(y[i]);
    return out;
}

EnvelopeResult extract_envelope(const RealSignal& x, const PipelineConfig& cfg) {
    const RealSignal pre = preprocess(x, cfg);
    if (pre.size() < 3)
        throw NumericalError("observer needs >= 3 samples (got " + std::to_string(pre.size()) +
                             " after preprocessing)");

    const TransformConfig tcfg(cfg.resolved_transfer_freq(x.fs), pre.fs, pre.size());
    ComplexSignal analytic = si_analytic(pre, tcfg, cfg.evaluation);
    const double gain = cfg.calibrate_amplitude ? analytic_gain(tcfg.ratio()) : 1.0;
    for (auto& v : analytic.samples) v *= gain;

    EnvelopeResult result{envelope_abs(analytic), analytic.real(), analytic, kTransformLabel,
                          gain, tcfg.transfer_freq()};
    if (cfg.refine) result = refine_envelope(result, cfg);

    for (std::size_t pass = 0; pass < cfg.reprocess_passes; ++pass) {
        const auto again = si_analytic(scaled(result.envelope, 1.0 / gain), tcfg, cfg.evaluation);
        result.envelope = scaled(envelope_abs(again), gain);
    }
    if (cfg.reprocess_passes > 0)
        result.method_label += "+reprocess" + std::to_string(cfg.reprocess_passes);
    return result;
}

EnvelopeResult refine_envelope(const EnvelopeResult& result, const PipelineConfig& cfg) {
    if (!(result.transfer_freq > 0.0))
        throw ArgumentError("refine_envelope: result does not come from the transform");
    if (result.carrier.size() != result.envelope.size())
        throw ArgumentError("refine_envelope: carrier and envelope lengths differ");
    validate(result.carrier, "refine_envelope");

    const TransformConfig tcfg(result.transfer_freq, result.carrier.fs, result.carrier.size());
    const auto carrier_analytic =
        si_analytic(scaled(result.carrier, 1.0 / result.gain), tcfg, cfg.evaluation);
    const RealSignal carrier_env = scaled(envelope_abs(carrier_analytic), result.gain);

    EnvelopeResult out = result;
    for (std::size_t i = 0; i < out.envelope.size(); ++i)
        out.envelope.samples[i] = std::max(0.0, out.envelope.samples[i] - carrier_env.samples[i]);
    out.method_label += "+refine";
    return out;
}

EnvelopeResult hilbert_envelope(const RealSignal& x) {
    validate(x, "hilbert_envelope");
    const std::size_t n = x.size();
    if (n < 2) throw ArgumentError("hilbert_envelope: need at least 2 samples");

    ComplexSignal analytic = to_complex(x);
    fft::transform(analytic.samples, fft::Direction::forward);
    // Bin 0 (and bin n/2 for even n) keep unit weight.
    const std::size_t half = n / 2;
    const std::size_t last_doubled = n % 2 == 0 ? half - 1 : half;
    for (std::size_t k = 1; k <= last_doubled; ++k) analytic.samples[k] *= 2.0;
    for (std::size_t k = last_doubled + 1 + (n % 2 == 0 ? 1 : 0); k < n; ++k)
        analytic.samples[k] = 0.0;
    fft::transform(analytic.samples, fft::Direction::backward);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& v : analytic.samples) v *= inv_n;

    return {envelope_abs(analytic), analytic.real(), analytic, kHilbertLabel, 1.0, 0.0};
}

RealSignal resample_to(const RealSignal& x, const RealSignal& grid) {
    validate(x, "resample_to");
    validate(grid, "resample_to", false);
    if (same_grid(x, grid)) return x;
    RealSignal out{std::vector<double>(grid.size()), grid.fs, grid.t0};
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.samples[i] = interpolate_linear(x, (grid.time(i) - x.t0) * x.fs);
    return out;
}

std::vector<EnvelopeMetrics> compare_envelopes(const std::vector<Candidate>& candidates,
                                               const std::optional<RealSignal>& truth) {
    if (candidates.empty()) throw ArgumentError("compare_envelopes: no candidates");

    const RealSignal* grid = truth ? &*truth : nullptr;
    if (!grid) {
        grid = &candidates.front().envelope;
        for (const auto& c : candidates)
            if (c.envelope.fs > grid->fs) grid = &c.envelope;
    }

    std::vector<EnvelopeMetrics> table;
    table.reserve(candidates.size());
    for (const auto& c : candidates) {
        const RealSignal y = resample_to(c.envelope, *grid);
        EnvelopeMetrics m;
        m.method = c.label;
        if (truth) {
            double sq = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                const double d = y.samples[i] - truth->samples[i];
                sq += d * d;
            }
            m.rmse = y.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(y.size()));
            m.correlation = pearson(y.samples, truth->samples);
        }
        if (y.size() >= 3) {
            double acc = 0.0;
            for (std::size_t i = 1; i + 1 < y.size(); ++i)
                acc += std::abs(y.samples[i + 1] - 2.0 * y.samples[i] + y.samples[i - 1]);
            m.smoothness = acc / static_cast<double>(y.size() - 2);
        }
        table.push_back(std::move(m));
    }
    return table;
}

std::vector<EnvelopeMetrics> compare_envelopes(const std::vector<EnvelopeResult>& candidates,
                                               const std::optional<RealSignal>& truth) {
    std::vector<Candidate> list;
    list.reserve(candidates.size());
    for (const auto& c : candidates) list.push_back({c.method_label, c.envelope});
    return compare_envelopes(list, truth);
}

}  // namespace nmrenv
