#pragma once

#include "json.hpp"

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace serrin {

using Json = nlohmann::ordered_json;

/// Shortest decimal that reads back to the same double.
std::string format_number(double x);

/// Comma-separated table with a header row.
class CsvTable {
public:
    using Cell = std::variant<double, int, std::string>;

    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add_row(const std::vector<Cell>& row);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);

}  // namespace serrin
