#include "nmrenv/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "nmrenv/csv_io.hpp"
#include "nmrenv/error.hpp"
#include "nmrenv/timescale.hpp"
#include "nmrenv/transform.hpp"

namespace nmrenv::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

constexpr Command kCommands[] = {Command::synth,   Command::envelope,    Command::transform,
                                 Command::compare, Command::pulse_study, Command::timescale_demo};

const std::map<std::string, Frame> kFrames{{"laboratory", Frame::laboratory},
                                           {"rotating", Frame::rotating}};
const std::map<std::string, Evaluation> kEvaluations{{"automatic", Evaluation::automatic},
                                                     {"direct", Evaluation::direct},
                                                     {"chirp-z", Evaluation::chirp_z}};

template <class E>
std::string enum_name(const std::map<std::string, E>& names, E value) {
    for (const auto& [name, v] : names)
        if (v == value) return name;
    return "?";
}

// The single list of configuration keys; drives flags, config files and the echo.
template <class Cfg, class Visitor>
void visit_keys(Cfg& c, Visitor&& v) {
    v("input", c.input, "signal CSV (time_s,voltage_v)");
    v("truth", c.truth, "reference envelope CSV (time_s,value)");
    v("external", c.external, "label=path envelope CSV to compare, repeatable");
    v("seed", c.noise.seed, "noise seed");
    v("fs", c.fs, "synthetic sampling frequency, Hz");
    v("duration", c.duration, "synthetic duration, s");
    v("frame", c.frame, "laboratory | rotating");
    v("m0", c.fid.m0, "equilibrium magnetization");
    v("alpha", c.fid.alpha, "flip angle, rad");
    v("omega0", c.fid.omega0, "Larmor angular frequency, rad/s");
    v("t2", c.fid.t2, "transverse relaxation time, s");
    v("delta_omega0", c.fid.delta_omega0, "Lorentzian half-width, rad/s");
    v("phase0", c.fid.phase0, "initial phase, rad");
    v("noise", c.add_noise, "add the composite noise to synthetic signals");
    v("rician_noncentrality", c.noise.rician.noncentrality, "");
    v("rician_scale", c.noise.rician.scale, "");
    v("rician_amplitude", c.noise.rician.amplitude, "peak Rician noise, V");
    v("gaussian_std", c.noise.gaussian.std, "");
    v("gaussian_amplitude", c.noise.gaussian.amplitude, "");
    v("johnson_temperature_c", c.noise.johnson.temperature_c, "");
    v("johnson_resistance_ohm", c.noise.johnson.resistance_ohm, "");
    v("johnson_bandwidth_hz", c.noise.johnson.bandwidth_hz, "");
    v("harmonic_freq", c.noise.harmonic.freq, "mains interference frequency, Hz");
    v("harmonic_amplitude", c.noise.harmonic.amplitude, "");
    v("delay_samples", c.pipeline.delay_samples, "zeros prepended before decimation");
    v("remove_mean", c.pipeline.remove_mean, "");
    v("downsample_factor", c.pipeline.downsample_factor, "keep every M-th sample");
    v("transfer_freq", c.pipeline.transfer_freq, "transfer frequency f_o, Hz");
    v("transfer_ratio", c.pipeline.transfer_ratio, "f_o / input fs when transfer_freq is unset");
    v("refine", c.pipeline.refine, "subtract the carrier envelope");
    v("reprocess_passes", c.pipeline.reprocess_passes, "");
    v("calibrate_amplitude", c.pipeline.calibrate_amplitude, "scale envelopes to volts");
    v("evaluation", c.pipeline.evaluation, "automatic | direct | chirp-z");
    v("pulse_fs", c.pulse.fs, "");
    v("pulse_n", c.pulse.n, "");
    v("pulse_width", c.pulse.width, "");
    v("pulse_delay", c.pulse.delay, "base delay D, samples");
    v("pulse_transfer_freq", c.pulse.transfer_freq, "base transfer frequency, Hz");
    v("pulse_height", c.pulse.height, "");
    v("scale_factor", c.scale_factor, "time-scaling factor M");
}

struct Binder {
    CLI::App& app;

    template <class T>
    void operator()(const char* key, T& ref, const char* help) {
        app.add_option(std::string("--") + key, ref, help)->capture_default_str();
    }
    void operator()(const char* key, Frame& ref, const char* help) {
        app.add_option(std::string("--") + key, ref, help)
            ->transform(CLI::CheckedTransformer(kFrames, CLI::ignore_case));
    }
    void operator()(const char* key, Evaluation& ref, const char* help) {
        app.add_option(std::string("--") + key, ref, help)
            ->transform(CLI::CheckedTransformer(kEvaluations, CLI::ignore_case));
    }
    void operator()(const char* key, std::optional<double>& ref, const char* help) {
        app.add_option_function<double>(std::string("--") + key,
                                        [&ref](const double& v) { ref = v; }, help);
    }
};

struct Echo {
    Json& out;

    template <class T>
    void operator()(const char* key, const T& ref, const char*) {
        out[key] = ref;
    }
    void operator()(const char* key, const Frame& ref, const char*) {
        out[key] = enum_name(kFrames, ref);
    }
    void operator()(const char* key, const Evaluation& ref, const char*) {
        out[key] = enum_name(kEvaluations, ref);
    }
    void operator()(const char* key, const std::optional<double>& ref, const char*) {
        out[key] = ref ? Json(*ref) : Json(nullptr);
    }
};

struct Output {
    std::vector<EnvelopeResult> results;
    std::vector<io::Artifact> extra;
    std::vector<EnvelopeMetrics> metrics;
    Json details = Json::object();
};

std::pair<std::string, std::string> split_external(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
        throw ArgumentError("external must be label=path, got '" + spec + "'");
    return {spec.substr(0, eq), spec.substr(eq + 1)};
}

std::optional<RealSignal> load_truth(const RunConfig& cfg) {
    if (cfg.truth.empty()) return std::nullopt;
    return io::load_signal(cfg.truth);
}

Output run_synth(const RunConfig& cfg) {
    const ComplexSignal fid = synth_fid(cfg.fid, cfg.frame, cfg.fs, cfg.duration);
    RealSignal signal = fid.real();
    if (cfg.add_noise) signal = add_signals(signal, gen_noise(cfg.noise, signal.size(), cfg.fs));
    const RealSignal truth = fid_envelope(cfg.fid, cfg.fs, 0.0, signal.size());

    Output o;
    o.extra.push_back(io::signal_artifact("synth", signal, "voltage_v"));
    o.extra.push_back(io::signal_artifact("truth", truth));
    o.details = {{"samples", signal.size()},
                 {"fs", signal.fs},
                 {"t2_star", cfg.fid.t2_star()},
                 {"peak_amplitude", cfg.fid.peak_amplitude()}};
    return o;
}

Output run_envelope(const RunConfig& cfg) {
    const RealSignal x = io::load_signal(cfg.input);
    EnvelopeResult r = extract_envelope(x, cfg.pipeline);
    Output o;
    o.extra.push_back(io::signal_artifact("carrier", r.carrier));
    if (const auto truth = load_truth(cfg)) o.metrics = compare_envelopes({r}, truth);
    o.details = {{"input_samples", x.size()},
                 {"input_fs", x.fs},
                 {"samples", r.envelope.size()},
                 {"fs", r.envelope.fs},
                 {"transfer_freq", r.transfer_freq},
                 {"ratio", r.transfer_freq / r.envelope.fs},
                 {"gain", r.gain}};
    o.results.push_back(std::move(r));
    return o;
}

Output run_transform(const RunConfig& cfg) {
    const RealSignal x = io::load_signal(cfg.input);
    const TransformConfig tcfg(cfg.pipeline.resolved_transfer_freq(x.fs), x.fs, x.size());
    const Spectrum spec = forward_discrete(x, tcfg, cfg.pipeline.evaluation);
    ComplexSignal analytic = inverse_discrete(spec, cfg.pipeline.evaluation);
    analytic.t0 = x.t0;

    std::vector<double> k(spec.coeffs.size()), re(k.size()), im(k.size()), mag(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        k[i] = static_cast<double>(i);
        re[i] = spec.coeffs[i].real();
        im[i] = spec.coeffs[i].imag();
        mag[i] = std::abs(spec.coeffs[i]);
    }
    std::vector<double> t(analytic.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = analytic.time(i);

    Output o;
    o.extra.push_back({"spectrum", {"k", "re", "im", "abs"}, {k, re, im, mag}});
    o.extra.push_back({"analytic",
                       {"time_s", "re", "im", "abs"},
                       {t, analytic.real().samples, analytic.imag().samples,
                        analytic.amplitude().samples}});
    o.details = {{"samples", x.size()},
                 {"fs", x.fs},
                 {"transfer_freq", tcfg.transfer_freq()},
                 {"ratio", tcfg.ratio()},
                 {"delta_psi", tcfg.delta_psi()}};
    return o;
}

Output run_compare(const RunConfig& cfg) {
    const RealSignal x = io::load_signal(cfg.input);
    PipelineConfig plain = cfg.pipeline;
    plain.refine = false;
    PipelineConfig refined = cfg.pipeline;
    refined.refine = true;

    Output o;
    o.results.push_back(extract_envelope(x, plain));
    o.results.push_back(extract_envelope(x, refined));
    o.results.push_back(hilbert_envelope(preprocess(x, cfg.pipeline)));

    std::vector<Candidate> candidates;
    for (const auto& r : o.results) candidates.push_back({r.method_label, r.envelope});
    for (const auto& spec : cfg.external) {
        const auto [label, path] = split_external(spec);
        RealSignal env = io::load_signal(path);
        o.extra.push_back(io::signal_artifact(label, env));
        candidates.push_back({label, std::move(env)});
    }
    o.metrics = compare_envelopes(candidates, load_truth(cfg));
    o.details = {{"input_samples", x.size()},
                 {"candidates", candidates.size()},
                 {"truth", !cfg.truth.empty()}};
    return o;
}

Json fringe_json(const FringeReport& f) {
    const auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    return {{"peak_indices", f.peak_indices},
            {"spacings", f.spacings},
            {"mean_spacing", f.mean_spacing},
            {"h0_estimate", opt(f.h0_estimate)},
            {"recovered_delay_samples", opt(f.recovered_delay_samples)},
            {"recovered_transfer_freq", opt(f.recovered_transfer_freq)}};
}

Output run_pulse_study(const RunConfig& cfg) {
    const PulseStudy study = nmrenv::run_pulse_study(cfg.pulse, cfg.pipeline.evaluation);
    Output o;
    Json scenarios = Json::array();
    std::vector<double> peak_scenario, peak_k, peak_value;
    for (std::size_t s = 0; s < study.scenarios.size(); ++s) {
        const auto& sc = study.scenarios[s];
        const auto& c = sc.spectrum.coeffs;
        std::vector<double> k(c.size()), re(c.size()), im(c.size()), re_abs(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            k[i] = static_cast<double>(i);
            re[i] = c[i].real();
            im[i] = c[i].imag();
            re_abs[i] = std::abs(c[i].real());
        }
        o.extra.push_back({"spectrum-" + sc.label,
                           {"k", "re", "im", "abs_re", "fringe_envelope"},
                           {k, re, im, re_abs, fringe_envelope(sc.spectrum)}});
        for (std::size_t p : sc.fringes.peak_indices) {
            peak_scenario.push_back(static_cast<double>(s));
            peak_k.push_back(static_cast<double>(p));
            peak_value.push_back(re_abs[p]);
        }
        Json j = fringe_json(sc.fringes);
        j["label"] = sc.label;
        j["delay_samples"] = sc.delay;
        j["transfer_freq"] = sc.transfer_freq;
        scenarios.push_back(std::move(j));
    }
    o.extra.push_back({"fringes", {"scenario", "k", "abs_re"}, {peak_scenario, peak_k, peak_value}});
    o.details = {{"scenarios", std::move(scenarios)},
                 {"h0", study.h0},
                 {"recovered_delay_samples", study.recovered_delay},
                 {"true_delay_samples", study.scenarios[1].delay},
                 {"recovered_transfer_freq", study.recovered_transfer_freq},
                 {"true_transfer_freq", study.scenarios[2].transfer_freq}};
    return o;
}

Output run_timescale_demo(const RunConfig& cfg) {
    const ScaleFactor m(cfg.scale_factor);
    const RealSignal lab = synth_fid(cfg.fid, Frame::laboratory, cfg.fs, cfg.duration).real();
    const RealSignal rot = synth_fid(cfg.fid, Frame::rotating, cfg.fs, cfg.duration).real();
    const RealSignal lab_scaled = scale_time(zero_pad(lab, m), m);
    const RealSignal rot_scaled = scale_time(zero_pad(rot, m), m);

    const double window = cfg.duration / static_cast<double>(m.value());
    const std::size_t bin = dominant_bin(lab), bin_scaled = dominant_bin(lab_scaled);
    const double tau = fit_decay_constant(rot, 0.0, window);
    const double tau_scaled = fit_decay_constant(rot_scaled, 0.0, window);

    Output o;
    o.extra.push_back(io::signal_artifact("laboratory", lab, "voltage_v"));
    o.extra.push_back(io::signal_artifact("laboratory-scaled", lab_scaled, "voltage_v"));
    o.extra.push_back(io::signal_artifact("rotating", rot, "voltage_v"));
    o.extra.push_back(io::signal_artifact("rotating-scaled", rot_scaled, "voltage_v"));
    o.details = {{"scale_factor", m.value()},
                 {"dominant_bin", bin},
                 {"dominant_bin_scaled", bin_scaled},
                 {"decay_constant", tau},
                 {"decay_constant_scaled", tau_scaled},
                 {"decay_ratio", tau_scaled / tau},
                 {"rotating_sign_changes_scaled", sign_changes(rot_scaled)}};
    return o;
}

Output dispatch(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::synth: return run_synth(cfg);
        case Command::envelope: return run_envelope(cfg);
        case Command::transform: return run_transform(cfg);
        case Command::compare: return run_compare(cfg);
        case Command::pulse_study: return run_pulse_study(cfg);
        case Command::timescale_demo: return run_timescale_demo(cfg);
    }
    throw ArgumentError("unknown command");
}

void require_file(const std::string& path, const char* what) {
    if (!fs::is_regular_file(path))
        throw ArgumentError(std::string(what) + " file not found: " + path);
}

}  // namespace

std::string_view command_name(Command c) {
    switch (c) {
        case Command::synth: return "synth";
        case Command::envelope: return "envelope";
        case Command::transform: return "transform";
        case Command::compare: return "compare";
        case Command::pulse_study: return "pulse-study";
        case Command::timescale_demo: return "timescale-demo";
    }
    return "?";
}

void RunConfig::validate() const {
    if (!(fs > 0.0)) throw ArgumentError("fs must be > 0");
    if (!(duration >= 0.0)) throw ArgumentError("duration must be >= 0");
    if (scale_factor == 0) throw ArgumentError("scale_factor must be >= 1");
    if (outdir.empty()) throw ArgumentError("output directory must not be empty");
    fid.validate();
    noise.validate();
    pipeline.validate();

    const bool needs_input = command == Command::envelope || command == Command::transform ||
                             command == Command::compare;
    if (needs_input) {
        if (input.empty())
            throw ArgumentError(std::string(command_name(command)) + " needs --input");
        require_file(input, "input");
    }
    if (!truth.empty()) require_file(truth, "truth");
    for (const auto& e : external) require_file(split_external(e).second, "external");
}

Json config_echo(const RunConfig& cfg) {
    Json j = Json::object();
    visit_keys(cfg, Echo{j});
    return j;
}

std::string config_text(const RunConfig& cfg) {
    std::string text = "# nmrenv " + std::string(command_name(cfg.command)) + "\n";
    const Json echo = config_echo(cfg);
    for (const auto& [key, value] : echo.items()) {
        if (value.is_null() || (value.is_string() && value.get<std::string>().empty()) ||
            (value.is_array() && value.empty()))
            continue;
        text += key + " = " + value.dump() + "\n";
    }
    return text;
}

bool parse_arguments(const std::vector<std::string>& args, RunConfig& cfg, std::ostream& out) {
    CLI::App app{"Envelope extraction for NMR signals with a scale-invariant transform", "nmrenv"};
    app.set_version_flag("--version", std::string(io::kVersion));
    app.set_config("--config", "", "key = value file; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.fallthrough();
    app.require_subcommand(1, 1);

    visit_keys(cfg, Binder{app});
    std::string outdir = cfg.outdir.string();
    app.add_option("--out", outdir, "output directory")->capture_default_str();

    std::vector<std::pair<Command, CLI::App*>> subs;
    for (Command c : kCommands) subs.emplace_back(c, app.add_subcommand(std::string(command_name(c))));
    subs[0].second->description("synthetic FID (plus noise) and its true envelope");
    subs[1].second->description("transform-based envelope of --input");
    subs[2].second->description("forward spectrum and analytic signal of --input");
    subs[3].second->description("transform vs Hilbert vs external envelopes, with metrics");
    subs[4].second->description("delayed-pulse fringe study with parameter recovery");
    subs[5].second->description("time scaling of laboratory and rotating frame FIDs");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        app.exit(e, out, out);
        return false;
    } catch (const CLI::ParseError& e) {
        throw ArgumentError(e.what());
    }
    for (const auto& [c, sub] : subs)
        if (sub->parsed()) cfg.command = c;
    cfg.outdir = outdir;
    return true;
}

int run_command(const RunConfig& cfg, std::ostream& err) {
    try {
        cfg.validate();
        Output o = dispatch(cfg);
        io::Report report{std::string(command_name(cfg.command)), config_echo(cfg), cfg.seed(),
                          std::move(o.metrics), std::move(o.details)};
        io::save_results(o.results, o.extra, report, cfg.outdir);
        std::ofstream echo(cfg.outdir / "run.cfg", std::ios::binary | std::ios::trunc);
        echo << config_text(cfg);
        if (!echo) throw IoError("cannot write " + (cfg.outdir / "run.cfg").string());
        return 0;
    } catch (const NumericalError& e) {
        err << "nmrenv: numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const ArgumentError& e) {
        err << "nmrenv: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        err << "nmrenv: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "nmrenv: " << e.what() << '\n';
        return 2;
    }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        if (!parse_arguments(args, cfg, out)) return 0;
    } catch (const std::exception& e) {
        err << "nmrenv: " << e.what() << "\nrun 'nmrenv --help' for usage\n";
        return 1;
    }
    return run_command(cfg, err);
}

}  // namespace nmrenv::cli
