#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nmrenv/signal.hpp"
#include "nmrenv/transform.hpp"

namespace nmrenv {

struct FringeReport {
    std::vector<std::size_t> peak_indices;  ///< k-bins of detected fringes
    std::vector<double> spacings;           ///< successive differences, k-bins
    double mean_spacing = 0.0;
    std::optional<double> h0_estimate;
    std::optional<double> recovered_delay_samples;
    std::optional<double> recovered_transfer_freq;
};

/// y_m = m h0 N fs / (d f_o). Throws ArgumentError for d <= 0 or f_o <= 0.
double fringe_spacing_model(double m, double h0, std::size_t n, double fs, double d, double f_o);

struct PeakOptions {
    double relative_prominence = 0.1;  ///< of the global maximum
    std::size_t min_separation = 2;    ///< bins
};

/// Indices of local maxima of `values` with prominence >= relative_prominence
/// * max(values), thinned so that no two kept peaks are closer than
/// min_separation (higher peaks win). Endpoints are never peaks.
std::vector<std::size_t> find_prominent_peaks(const std::vector<double>& values,
                                              const PeakOptions& opts = {});

/// Fringes of |Re X[k]|. Throws NumericalError("insufficient fringes") below two peaks.
FringeReport detect_fringes(const Spectrum& spec, const PeakOptions& opts = {});

/// h0 from a run with known delay and transfer frequency (m = 1).
double calibrate_h0(const FringeReport& report, std::size_t n, double fs, double d, double f_o);

/// Exactly one of delay_samples / transfer_freq is known; the other is recovered.
struct KnownParameters {
    std::size_t n = 0;
    double fs = 0.0;
    std::optional<double> delay_samples;
    std::optional<double> transfer_freq;
};

/// Inverts the spacing law with the report's mean spacing:
/// unknown = h0 N fs / (mean_spacing * known_other).
FringeReport recover_parameters(const FringeReport& report, const KnownParameters& known,
                                double h0);

/// |Re X[k]| smoothed by a centred moving maximum (plotting only).
std::vector<double> fringe_envelope(const Spectrum& spec, std::size_t window = 5);

struct PulseScenario {
    std::string label;
    std::size_t delay = 0;
    double transfer_freq = 0.0;
    RealSignal pulse;
    Spectrum spectrum;
    FringeReport fringes;
};

struct PulseStudy {
    std::vector<PulseScenario> scenarios;    ///< (D, f_o), (2D, f_o), (D, 2 f_o)
    double h0 = 0.0;                         ///< calibrated on the first scenario
    double recovered_delay = 0.0;            ///< second scenario, from h0
    double recovered_transfer_freq = 0.0;    ///< third scenario, from h0
};

struct PulseStudyParams {
    double fs = 100.0;
    std::size_t n = 1000;
    std::size_t width = 4;
    std::size_t delay = 100;
    double transfer_freq = 10.0;
    double height = 1.0;
};

PulseStudy run_pulse_study(const PulseStudyParams& p,
                           Evaluation eval = Evaluation::automatic);

}  // namespace nmrenv
