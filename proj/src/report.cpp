#include "serrin/report.hpp"

#include <fmt/format.h>

#include <fstream>
#include <stdexcept>

namespace serrin {

std::string format_number(double x) { return fmt::format("{}", x); }

void CsvTable::add_row(const std::vector<Cell>& row) {
    if (row.size() != header_.size()) throw std::invalid_argument("CSV row width does not match the header");
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const Cell& c : row) {
        cells.push_back(std::visit(
            [](const auto& v) -> std::string {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>)
                    return format_number(v);
                else if constexpr (std::is_same_v<T, int>)
                    return std::to_string(v);
                else
                    return v;
            },
            c));
    }
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    auto line = [](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
        return s + "\n";
    };
    std::string out = line(header_);
    for (const auto& r : rows_) out += line(r);
    return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << str();
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << j.dump(2) << "\n";
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path.string());
    return Json::parse(f);
}

}  // namespace serrin
