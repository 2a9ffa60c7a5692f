#include "specreg/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "specreg/error.hpp"

namespace specreg {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

CsvTable parse_csv(const std::string& text, const std::string& source) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++number;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw InvalidInput(source + ":" + std::to_string(number) + ": expected " +
                               std::to_string(table.header.size()) + " fields, found " +
                               std::to_string(cells.size()));
        }
        table.rows.push_back({number, std::move(cells)});
    }
    if (!have_header) throw InvalidInput(source + ": empty file");
    return table;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text_file(path), path.string()); }

double parse_number(const std::string& cell, int line, const std::string& column) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (cell.empty() || end != begin + cell.size()) {
        throw InvalidInput("line " + std::to_string(line) + ": cannot parse '" + cell + "' in column " +
                           column);
    }
    return v;
}

bool is_missing_cell(const std::string& cell) { return cell.empty() || cell == "NA" || cell == "na"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << text;
    if (!out) throw InvalidInput("failed writing " + path.string());
}

}  // namespace specreg
