#include "nmrenv/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>

#include "nmrenv/csv_io.hpp"
#include "nmrenv/error.hpp"

namespace nmrenv::io {

namespace fs = std::filesystem;

namespace {

Json number_or_null(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

void write_metrics(const fs::path& path, const std::vector<EnvelopeMetrics>& metrics) {
    std::string text = "method,rmse,correlation,smoothness\n";
    const auto cell = [](std::optional<double> v) {
        return v && std::isfinite(*v) ? format_number(*v) : std::string("nan");
    };
    for (const auto& m : metrics)
        text += m.method + "," + cell(m.rmse) + "," + cell(m.correlation) + "," +
                cell(m.smoothness) + "\n";
    write_text(path, text);
}

}  // namespace

Artifact signal_artifact(const std::string& label, const RealSignal& x,
                         const std::string& value_name) {
    std::vector<double> t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) t[i] = x.time(i);
    return {label, {"time_s", value_name}, {std::move(t), x.samples}};
}

std::uint64_t config_hash(const Json& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string artifact_file_name(const std::string& label, std::uint64_t hash) {
    std::string safe = label;
    for (auto& c : safe) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                        c == '+' || c == '.' || c == '_' || c == '-';
        if (!ok) c = '-';
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    return safe + "_" + hex + ".csv";
}

Json report_json(const Report& report, const std::vector<std::string>& artifacts,
                 const std::string& timestamp) {
    Json metrics = Json::array();
    for (const auto& m : report.metrics)
        metrics.push_back({{"method", m.method},
                           {"rmse", number_or_null(m.rmse)},
                           {"correlation", number_or_null(m.correlation)},
                           {"smoothness", number_or_null(m.smoothness)}});
    Json j;
    j["version"] = kVersion;
    j["command"] = report.command;
    j["config"] = report.config;
    j["seed"] = report.seed;
    j["metrics"] = std::move(metrics);
    j["artifacts"] = artifacts;
    j["details"] = report.details;
    j[kTimestampField] = timestamp;
    return j;
}

std::vector<fs::path> save_results(const std::vector<EnvelopeResult>& results,
                                   const std::vector<Artifact>& extra, const Report& report,
                                   const fs::path& outdir) {
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec) throw IoError("cannot create " + outdir.string() + ": " + ec.message());

    const std::uint64_t hash = config_hash(report.config);
    std::vector<fs::path> written;
    std::vector<std::string> names;
    const auto emit = [&](const Artifact& a) {
        const std::string name = artifact_file_name(a.label, hash);
        write_csv(outdir / name, a.header, a.columns);
        written.push_back(outdir / name);
        names.push_back(name);
    };

    for (const auto& r : results) emit(signal_artifact(r.method_label, r.envelope));
    for (const auto& a : extra) emit(a);
    if (!report.metrics.empty()) {
        const std::string name = artifact_file_name("metrics", hash);
        write_metrics(outdir / name, report.metrics);
        written.push_back(outdir / name);
        names.push_back(name);
    }

    const fs::path json_path = outdir / "report.json";
    write_text(json_path, report_json(report, names, utc_now()).dump(2) + "\n");
    written.push_back(json_path);
    return written;
}

}  // namespace nmrenv::io
