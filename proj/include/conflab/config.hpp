#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conflab/errors.hpp"

namespace conflab {

/// Bad flags, unknown keys, unparsable values. The CLI maps it to exit 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

inline constexpr const char* kSubcommands[] = {"characterize", "energy", "hi-vg", "gh",
                                               "modulus",      "lemmas", "beta",  "psi"};

/// Flat key=value settings of one run. Keys from the config file are read from
/// the [general] section and the section named after the subcommand; command
/// line overrides win. Dashes in keys are read as underscores.
///
/// Lists: ids are separated by ';' (ids themselves contain commas), numbers
/// by ','. Points are "x,y" or "x,y,z" and point lists use ';'.
class ExperimentConfig {
public:
    explicit ExperimentConfig(std::string subcommand);

    const std::string& subcommand() const { return subcommand_; }

    /// Reads an INI file. ConfigError when it cannot be read or parsed.
    void load_file(const std::string& path);
    /// "key=value".
    void apply_override(std::string_view text);
    void set(std::string key, std::string value);

    std::string preset() const { return text("preset"); }
    std::uint64_t seed() const;
    std::string out_dir() const { return text("out"); }
    bool json_only() const { return flag("json_only"); }

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::string text(const std::string& key) const;
    double real(const std::string& key) const;
    int integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::vector<std::string> ids(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    std::vector<std::vector<double>> points(const std::string& key) const;

    /// ConfigError naming the first key that the subcommand does not know, or
    /// a preset outside {coarse, default, fine}.
    void validate() const;

    /// Every resolved key with its value, sorted by key.
    nlohmann::json to_json() const;

private:
    std::string subcommand_;
    std::map<std::string, std::string> values_;
};

/// Known keys with their defaults for a subcommand (general keys included).
const std::map<std::string, std::string>& config_defaults(std::string_view subcommand);

}  // namespace conflab
