#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace serrin {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat key-value text with sections:
///
///     # comment
///     [section]
///     key = value
///
/// Keys before the first section header belong to the section "".  Lists
/// are comma separated.  Later assignments override earlier ones.
class Config {
public:
    static Config parse(std::istream& in, const std::string& source = "<config>");
    static Config parse_string(const std::string& text);
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& section, const std::string& key) const;
    void set(const std::string& section, const std::string& key, std::string value);

    std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    int integer(const std::string& section, const std::string& key, int fallback) const;
    std::vector<double> numbers(const std::string& section, const std::string& key,
                                const std::vector<double>& fallback = {}) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const { return values_; }

private:
    std::optional<std::string> raw(const std::string& section, const std::string& key) const;

    std::map<std::string, std::map<std::string, std::string>> values_;
};

}  // namespace serrin
