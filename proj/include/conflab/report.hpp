#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "conflab/functionals.hpp"
#include "conflab/point.hpp"

namespace conflab {

inline constexpr int kReportSchema = 1;

/// Finite values as numbers; inf and nan as the strings "inf", "-inf", "nan"
/// (JSON has no literal for them).
nlohmann::json json_number(double v);
nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const std::vector<TruncationValue>& t);
/// {functional, params, truncations: [[k, value]...], verdict, extrapolated,
///  fit: {ratio, slope, residual, power_exponent}, warnings}
nlohmann::json to_json(const AnalysisReport& r);

/// "k,truncation_value" header plus one LF-terminated row per level.
std::string csv_series(const std::vector<TruncationValue>& t);

/// Writes through a temporary file in the same directory and renames it over
/// the target. ConfigError-free: throws std::runtime_error on I/O failure.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace conflab
