#include "conflab/catalog_id.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "conflab/errors.hpp"

namespace conflab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

double parse_real(std::string_view text) {
    std::string_view s = trim(text);
    double factor = 1.0;
    if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
        factor = std::numbers::pi;
        s.remove_suffix(2);
        s = trim(s);
        if (s.empty()) return factor;
        if (s.back() == '*') s.remove_suffix(1);
    }
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ValidationError("cannot parse number '" + std::string(text) + "'");
    return value * factor;
}

CatalogId CatalogId::parse(std::string_view text) {
    CatalogId id;
    text = trim(text);
    const auto colon = text.find(':');
    id.name = std::string(trim(text.substr(0, colon)));
    if (id.name.empty()) throw ValidationError("empty catalog id '" + std::string(text) + "'");
    if (colon == std::string_view::npos) return id;

    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        std::string_view item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("parameter '" + std::string(item) + "' in '" + std::string(text) +
                                  "' is not key=value");
        std::string key(trim(item.substr(0, eq)));
        id.params[key] = parse_real(item.substr(eq + 1));
    }
    return id;
}

double CatalogId::get(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::optional<double> CatalogId::find(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
}

std::string CatalogId::str() const {
    std::string out = name;
    char sep = ':';
    for (const auto& [k, v] : params) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += sep;
        out += k;
        out += '=';
        out += buf;
        sep = ',';
    }
    return out;
}

}  // namespace conflab
