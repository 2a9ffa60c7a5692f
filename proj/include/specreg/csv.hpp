#pragma once

// Minimal CSV reading and writing. Numbers are written with %.17g so that
// files round-trip exactly and are byte-stable across runs.

#include <filesystem>
#include <string>
#include <vector>

namespace specreg {

std::string format_number(double value);

struct CsvRow {
    int line = 0;  // 1-based line number in the source file
    std::vector<std::string> cells;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;

    /// Index of a header column, or -1.
    int column(const std::string& name) const;
};

/// Splits on commas, trims surrounding whitespace and strips a trailing CR.
/// Quoted fields are not supported.
std::vector<std::string> split_csv_line(const std::string& line);

/// Reads a file with a header line; blank lines are skipped. Throws
/// InvalidInput if the file cannot be opened or a row has the wrong width.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text, const std::string& source = "<text>");

/// Parses a finite or non-finite double; throws InvalidInput naming the line.
double parse_number(const std::string& cell, int line, const std::string& column);

/// True for "", "NA" and "na".
bool is_missing_cell(const std::string& cell);

std::string read_text_file(const std::filesystem::path& path);

/// Creates parent directories, then truncates and writes.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace specreg
