#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmrenv/pipeline.hpp"
#include "nmrenv/signal.hpp"

namespace nmrenv::io {

inline constexpr const char* kVersion = "nmrenv 1.0.0";
/// The one field of report.json allowed to differ between identical runs.
inline constexpr const char* kTimestampField = "generated_at";

using Json = nlohmann::ordered_json;

/// A plot-ready table written as <label>_<config hash>.csv.
struct Artifact {
    std::string label;
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

/// time_s,<value_name> table of a real signal.
Artifact signal_artifact(const std::string& label, const RealSignal& x,
                         const std::string& value_name = "value");

struct Report {
    std::string command;
    Json config = Json::object();  ///< echo of every run parameter
    std::uint64_t seed = 0;
    std::vector<EnvelopeMetrics> metrics;
    Json details = Json::object();  ///< command-specific results (fringes, fits)
};

/// FNV-1a 64 over the compact dump of `config`.
std::uint64_t config_hash(const Json& config);

/// "<label>_<16 hex digits>.csv"; characters outside [A-Za-z0-9+._-] become '-'.
std::string artifact_file_name(const std::string& label, std::uint64_t hash);

/// Writes one CSV per envelope result (time_s,value), the extra artifacts, a
/// metrics table when metrics are present, and report.json. Returns the
/// written paths, report.json last. Throws IoError naming the failing path.
std::vector<std::filesystem::path> save_results(const std::vector<EnvelopeResult>& results,
                                                const std::vector<Artifact>& extra,
                                                const Report& report,
                                                const std::filesystem::path& outdir);

/// report.json content as written, for a fixed timestamp string.
Json report_json(const Report& report, const std::vector<std::string>& artifacts,
                 const std::string& timestamp);

}  // namespace nmrenv::io
