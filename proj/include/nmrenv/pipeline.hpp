#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nmrenv/signal.hpp"
#include "nmrenv/transform.hpp"

namespace nmrenv {

/// Envelope extraction settings. Defaults follow the 8x sub-Nyquist synthetic study.
struct PipelineConfig {
    std::size_t delay_samples = 0;      ///< zeros prepended at the input rate
    bool remove_mean = true;
    std::size_t downsample_factor = 8;  ///< keep every M-th sample, no anti-alias filter
    /// Transfer frequency f_o in Hz. Unset: transfer_ratio times the input sampling rate.
    std::optional<double> transfer_freq;
    double transfer_ratio = 0.05;
    bool refine = true;
    std::size_t reprocess_passes = 0;
    /// Scale envelopes to volts; see analytic_gain().
    bool calibrate_amplitude = true;
    Evaluation evaluation = Evaluation::automatic;

    void validate() const;
    /// f_o in Hz for an input sampled at input_fs.
    double resolved_transfer_freq(double input_fs) const;
};

/// Gain that maps |inverse_discrete(forward_discrete(x))| back to the envelope
/// amplitude of x: 2 pi min(1, 2r). The inverse's 1/(2 pi N) normalisation
/// leaves a one-sided reconstruction of band [0, r f_s) a factor 4 pi r short
/// of the analytic signal, and the full-band (r = 1) round trip 2 pi short of x.
double analytic_gain(double ratio);

struct EnvelopeResult {
    RealSignal envelope;
    RealSignal carrier;
    ComplexSignal analytic;
    std::string method_label;
    /// Amplitude gain applied to envelope, carrier and analytic (1 when uncalibrated).
    double gain = 1.0;
    /// Transfer frequency used, Hz (0 for non-transform methods).
    double transfer_freq = 0.0;
};

/// Prepend delay zeros, subtract the mean, then decimate. The output keeps
/// the input's time axis: t0 moves back by delay / fs.
RealSignal preprocess(const RealSignal& x, const PipelineConfig& cfg);

/// Transform-based envelope of preprocess(x); optional refinement and
/// reprocessing passes. Throws NumericalError below three samples.
EnvelopeResult extract_envelope(const RealSignal& x, const PipelineConfig& cfg);

/// Subtracts the envelope of the extracted carrier from the envelope,
/// clamping negative residuals to zero.
EnvelopeResult refine_envelope(const EnvelopeResult& result, const PipelineConfig& cfg);

/// Analytic signal by zeroing negative DFT bins and doubling positive ones.
EnvelopeResult hilbert_envelope(const RealSignal& x);

struct EnvelopeMetrics {
    std::string method;
    std::optional<double> rmse;         ///< vs truth
    std::optional<double> correlation;  ///< Pearson, vs truth; unset when undefined
    double smoothness = 0.0;            ///< mean |second difference|
};

/// A candidate envelope for comparison; external results (CSV) carry only a label.
struct Candidate {
    std::string label;
    RealSignal envelope;
};

/// Resamples every candidate onto a common grid (the truth's when given,
/// otherwise the densest candidate's) by linear interpolation in time and
/// reports metrics in input order.
std::vector<EnvelopeMetrics> compare_envelopes(const std::vector<Candidate>& candidates,
                                               const std::optional<RealSignal>& truth);
std::vector<EnvelopeMetrics> compare_envelopes(const std::vector<EnvelopeResult>& candidates,
                                               const std::optional<RealSignal>& truth);

/// Linear interpolation of x onto the sample times of `grid`; times outside
/// x's support take the nearest edge value.
RealSignal resample_to(const RealSignal& x, const RealSignal& grid);

}  // namespace nmrenv
