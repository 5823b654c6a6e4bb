#include "nmrenv/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include "nmrenv/error.hpp"

namespace nmrenv::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

// First two comma-separated fields of a row, if both are numbers.
std::optional<std::pair<double, double>> parse_row(std::string_view line) {
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    auto rest = line.substr(comma + 1);
    const auto next = rest.find(',');
    if (next != std::string_view::npos) rest = rest.substr(0, next);
    const auto t = parse_double(line.substr(0, comma));
    const auto v = parse_double(rest);
    if (!t || !v) return std::nullopt;
    return std::pair{*t, *v};
}

double round_significant(double v, int digits) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific,
                                   digits - 1);
    double out = v;
    std::from_chars(buf, res.ptr, out);
    return out;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

RealSignal load_signal(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::vector<double> times;
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto row = parse_row(body);
        if (!row) {
            if (!seen_content) {
                seen_content = true;  // single header line
                continue;
            }
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": expected two numeric columns time_s,value");
        }
        seen_content = true;
        times.push_back(row->first);
        values.push_back(row->second);
    }
    if (times.empty()) throw IoError(path.string() + ": empty file (no data rows)");
    if (times.size() < 2)
        throw IoError(path.string() + ": need at least two rows to infer the sampling rate");

    std::vector<double> steps(times.size() - 1);
    for (std::size_t i = 1; i < times.size(); ++i) {
        steps[i - 1] = times[i] - times[i - 1];
        if (!(steps[i - 1] > 0.0))
            throw IoError(path.string() + ": time column is not strictly increasing at row " +
                          std::to_string(i + 1));
    }
    std::vector<double> sorted = steps;
    const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
    std::nth_element(sorted.begin(), mid, sorted.end());
    double median = *mid;
    if (sorted.size() % 2 == 0) {
        const double lower = *std::max_element(sorted.begin(), mid);
        median = 0.5 * (median + lower);
    }

    double jitter = 0.0;
    for (double s : steps) jitter = std::max(jitter, std::abs(s - median) / median);
    if (jitter > kMaxTimeJitter) {
        std::ostringstream msg;
        msg << path.string() << ": non-uniform sampling, relative jitter " << jitter
            << " exceeds " << kMaxTimeJitter;
        throw IoError(msg.str());
    }

    RealSignal out;
    out.samples = std::move(values);
    out.fs = round_significant(1.0 / median, 12);
    out.t0 = times.front();
    return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size())
        throw ArgumentError("write_csv: header and column counts differ");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw ArgumentError("write_csv: ragged columns");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j)
            out << (j ? "," : "") << format_number(columns[j][i]);
        out << '\n';
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

void save_signal(const std::filesystem::path& path, const RealSignal& x,
                 const std::string& value_name) {
    std::vector<double> t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) t[i] = x.time(i);
    write_csv(path, {"time_s", value_name}, {t, x.samples});
}

}  // namespace nmrenv::io
