#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nmrenv/signal.hpp"

namespace nmrenv::io {

/// Maximum relative deviation of any time step from the median step.
inline constexpr double kMaxTimeJitter = 1e-6;

/// Decimal with 12 significant digits, shortest form ("%.12g" semantics).
std::string format_number(double v);

/// Loads a two-column CSV (time_s, value) with at most one header line.
/// fs is 1 / median time step, rounded to 12 significant digits; t0 is the
/// first timestamp. Throws IoError on unreadable, empty, non-monotonic or
/// jittery input (the message carries the measured jitter).
RealSignal load_signal(const std::filesystem::path& path);

/// Writes `header` then one row per index; every column must be equally long.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

/// time_s,<value_name> rows for each sample.
void save_signal(const std::filesystem::path& path, const RealSignal& x,
                 const std::string& value_name = "value");

}  // namespace nmrenv::io
