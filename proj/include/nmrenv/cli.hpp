#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "nmrenv/fringe.hpp"
#include "nmrenv/pipeline.hpp"
#include "nmrenv/report.hpp"
#include "nmrenv/signal_model.hpp"

namespace nmrenv::cli {

enum class Command { synth, envelope, transform, compare, pulse_study, timescale_demo };

std::string_view command_name(Command c);

/// Everything one invocation depends on. Defaults regenerate the 1885-sample
/// synthetic study; the seed lives in noise.seed.
struct RunConfig {
    Command command = Command::synth;
    std::string input;                  ///< signal CSV for envelope / transform / compare
    std::string truth;                  ///< optional reference envelope CSV
    std::vector<std::string> external;  ///< "label=path" envelope CSVs for compare
    std::filesystem::path outdir = "out";

    double fs = 100.0;
    double duration = 6.0 * std::numbers::pi;
    Frame frame = Frame::laboratory;
    FidParams fid;
    bool add_noise = true;
    NoiseSpec noise;
    PipelineConfig pipeline;
    PulseStudyParams pulse;
    std::size_t scale_factor = 2;

    std::uint64_t seed() const { return noise.seed; }
    /// Throws ArgumentError on bad values or missing input files.
    void validate() const;
};

/// Every configuration key with its value (outdir excluded).
io::Json config_echo(const RunConfig& cfg);

/// The echo as a key = value file accepted by --config.
std::string config_text(const RunConfig& cfg);

/// Parses `nmrenv <command> [--key value]... [--config file]`. Throws
/// ArgumentError on usage errors. Returns false when help was printed to `out`.
bool parse_arguments(const std::vector<std::string>& args, RunConfig& cfg, std::ostream& out);

/// Runs the command and writes its files. Returns 0, 1 (usage, argument or
/// I/O error) or 2 (numerical failure); diagnostics go to `err`.
int run_command(const RunConfig& cfg, std::ostream& err);

/// parse_arguments + run_command with the same exit-status mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nmrenv::cli
