#include "conflab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace conflab {

nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

nlohmann::json to_json(const Point& p) {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < p.dim; ++i) j.push_back(p[i]);
    return j;
}

nlohmann::json to_json(const std::vector<TruncationValue>& t) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [k, v] : t) j.push_back({k, json_number(v)});
    return j;
}

nlohmann::json to_json(const AnalysisReport& r) {
    nlohmann::json j;
    j["functional"] = r.functional;
    j["params"] = r.params;
    j["truncations"] = to_json(r.truncations);
    j["verdict"] = std::string(to_string(r.limit.verdict));
    j["extrapolated"] = r.limit.extrapolated ? json_number(*r.limit.extrapolated) : nlohmann::json(nullptr);
    j["fit"] = {{"ratio", json_number(r.limit.ratio)},
                {"slope", json_number(r.limit.slope)},
                {"residual", json_number(r.limit.residual)},
                {"power_exponent", json_number(r.limit.power_exponent)}};
    j["warnings"] = r.warnings;
    return j;
}

std::string csv_series(const std::vector<TruncationValue>& t) {
    std::string out = "k,truncation_value\n";
    char buf[64];
    for (const auto& [k, v] : t) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", k, v);
        out += buf;
    }
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace conflab
