#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace conflab {

/// Parsed catalog address of the form "name" or "name:key=value,key=value".
/// Parameters are numeric; the value parser accepts a trailing "pi" factor
/// ("0.5pi", "pi") because curve-family caps are naturally given that way.
struct CatalogId {
    std::string name;
    std::map<std::string, double> params;

    static CatalogId parse(std::string_view text);

    double get(const std::string& key, double fallback) const;
    std::optional<double> find(const std::string& key) const;

    /// Canonical form: keys sorted, values printed with %.17g.
    std::string str() const;
};

/// Parses a real number with an optional "pi" suffix. Throws ValidationError.
double parse_real(std::string_view text);

}  // namespace conflab
