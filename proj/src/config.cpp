#include "conflab/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "conflab/catalog_id.hpp"

namespace conflab {

namespace {

using Defaults = std::map<std::string, std::string>;

const Defaults kGeneral = {
    {"preset", "default"}, {"seed", "1"}, {"out", "."}, {"json_only", "false"},
};

const std::map<std::string, Defaults, std::less<>>& table() {
    static const std::map<std::string, Defaults, std::less<>> t = [] {
        std::map<std::string, Defaults, std::less<>> m;
        m["characterize"] = {
            {"density", "constant;power:alpha=0.25;power:alpha=0.5;koebe;moebius"},
            {"psi", "power_psi:p=0.25;power_psi:p=0.5;power_psi:p=1;power_psi:p=2"},
            {"deltas", ""},
        };
        m["energy"] = {
            {"density", "koebe"},
            {"p_list", "0.25,0.4,0.6,0.75"},
            {"functional", "energy"},
        };
        m["hi-vg"] = {
            {"density", "constant;power:alpha=0.5;koebe;moebius"},
            {"hi_levels", "14"},
            {"hi_angles", "24"},
            {"vg_centers", "0,0;0.5,0;-0.5,0;0.3,0.4;0.9,0;-0.9,0"},
            {"vg_scales", "1,2,4"},
            {"vg_tolerance", "0.02"},
        };
        m["gh"] = {
            {"density", "constant;power:alpha=0.5;koebe;moebius"},
            {"endpoints", "0.9,0;-0.9,0;-1,0;0,1"},
            {"count", "200"},
            {"geodesic_tolerance", "0.05"},
        };
        m["modulus"] = {
            {"family", "radial:cap=pi,r=0.36787944117144233;annulus:r1=0.2,r2=0.5436563656918091"},
            {"tolerance", ""},
            {"iterations", "2000"},
        };
        m["lemmas"] = {
            {"density", "koebe;power:alpha=0.5"},
            {"cap_radii", "0.8,0.9,0.95"},
            {"cap_m", "4,10,100"},
            {"cap_samples", "256"},
            {"stability", "0.5"},
            {"sep_delta", "0.1"},
            {"sep_l", "0.2,0.4,0.8"},
            {"sep_count", "256"},
            {"cone_directions", "64"},
            {"carleson_centers", "512"},
        };
        m["beta"] = {
            {"density", "koebe;constant;power:alpha=0.5;moebius"},
            {"slope_floor", "0.1"},
        };
        m["psi"] = {
            {"psi", "power_psi:p=0.25;power_psi:p=0.5;power_psi:p=1;power_psi:p=2;log_doubling"},
        };
        for (auto& [name, d] : m) d.insert(kGeneral.begin(), kGeneral.end());
        return m;
    }();
    return t;
}

std::string normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        const std::string part = trim(std::string_view(s).substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (!part.empty()) out.push_back(part);
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

double to_real(const std::string& key, const std::string& v) {
    try {
        return parse_real(v);
    } catch (const Error&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a number");
    }
}

}  // namespace

const std::map<std::string, std::string>& config_defaults(std::string_view subcommand) {
    const auto it = table().find(subcommand);
    if (it == table().end()) throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
    return it->second;
}

ExperimentConfig::ExperimentConfig(std::string subcommand) : subcommand_(std::move(subcommand)) {
    values_ = config_defaults(subcommand_);
}

void ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config file '" + path + "': " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    // bare keys, then [general], then the subcommand's own section
    for (const auto& [key, node] : tree) {
        if (!node.empty() || key == "general" || table().count(key)) continue;
        set(key, node.get_value<std::string>());
    }
    for (const char* section : {"general", subcommand_.c_str()}) {
        const auto child = tree.get_child_optional(section);
        if (!child) continue;
        for (const auto& [key, node] : *child) set(key, node.get_value<std::string>());
    }
}

void ExperimentConfig::apply_override(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError("override '" + std::string(text) + "' is not of the form key=value");
    set(std::string(text.substr(0, eq)), std::string(text.substr(eq + 1)));
}

void ExperimentConfig::set(std::string key, std::string value) {
    key = normalize_key(trim(key));
    if (!config_defaults(subcommand_).count(key))
        throw ConfigError("unknown key '" + key + "' for subcommand '" + subcommand_ + "'");
    values_[key] = trim(value);
}

std::string ExperimentConfig::text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
    return it->second;
}

std::uint64_t ExperimentConfig::seed() const {
    const std::string v = text("seed");
    std::uint64_t s = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
    if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError("key 'seed': '" + v + "' is not an unsigned integer");
    return s;
}

double ExperimentConfig::real(const std::string& key) const { return to_real(key, text(key)); }

int ExperimentConfig::integer(const std::string& key) const {
    const std::string v = text(key);
    int x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
    return x;
}

bool ExperimentConfig::flag(const std::string& key) const {
    const std::string v = text(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off" || v.empty()) return false;
    throw ConfigError("key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<std::string> ExperimentConfig::ids(const std::string& key) const { return split(text(key), ';'); }

std::vector<double> ExperimentConfig::reals(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& s : split(text(key), ',')) out.push_back(to_real(key, s));
    return out;
}

std::vector<std::vector<double>> ExperimentConfig::points(const std::string& key) const {
    std::vector<std::vector<double>> out;
    for (const std::string& p : split(text(key), ';')) {
        std::vector<double> c;
        for (const std::string& s : split(p, ',')) c.push_back(to_real(key, s));
        if (c.size() != 2 && c.size() != 3) throw ConfigError("key '" + key + "': point '" + p + "' needs 2 or 3 coordinates");
        out.push_back(std::move(c));
    }
    return out;
}

void ExperimentConfig::validate() const {
    for (const auto& [key, value] : values_)
        if (!config_defaults(subcommand_).count(key))
            throw ConfigError("unknown key '" + key + "' for subcommand '" + subcommand_ + "'");
    const std::string p = preset();
    if (p != "coarse" && p != "default" && p != "fine")
        throw ConfigError("key 'preset': '" + p + "' is not one of coarse, default, fine");
    (void)seed();
    (void)json_only();
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, value] : values_) j[key] = value;
    return j;
}

}  // namespace conflab
