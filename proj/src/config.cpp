#include "serrin/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace serrin {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& s, const std::string& what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError(what + ": not a number: '" + s + "'");
    return v;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
    Config c;
    std::string section;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const std::string where = source + ":" + std::to_string(lineno);
        if (body.front() == '[') {
            if (body.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(std::string_view(body).substr(1, body.size() - 2));
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        if (key.empty()) throw ConfigError(where + ": empty key");
        c.values_[section][key] = trim(std::string_view(body).substr(eq + 1));
    }
    return c;
}

Config Config::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse(in, path.string());
}

bool Config::has(const std::string& section, const std::string& key) const { return raw(section, key).has_value(); }

void Config::set(const std::string& section, const std::string& key, std::string value) {
    values_[section][key] = std::move(value);
}

std::optional<std::string> Config::raw(const std::string& section, const std::string& key) const {
    const auto s = values_.find(section);
    if (s == values_.end()) return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

std::string Config::text(const std::string& section, const std::string& key, const std::string& fallback) const {
    return raw(section, key).value_or(fallback);
}

double Config::number(const std::string& section, const std::string& key, double fallback) const {
    const auto r = raw(section, key);
    return r ? parse_number(*r, "[" + section + "] " + key) : fallback;
}

int Config::integer(const std::string& section, const std::string& key, int fallback) const {
    const double v = number(section, key, fallback);
    if (v != static_cast<int>(v)) throw ConfigError("[" + section + "] " + key + ": expected an integer");
    return static_cast<int>(v);
}

std::vector<double> Config::numbers(const std::string& section, const std::string& key,
                                    const std::vector<double>& fallback) const {
    const auto r = raw(section, key);
    if (!r) return fallback;
    std::vector<double> out;
    std::stringstream ss(*r);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_number(item, "[" + section + "] " + key));
    }
    return out;
}

}  // namespace serrin
