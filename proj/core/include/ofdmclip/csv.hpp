#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ofdmclip::csv {

/// Shortest decimal text that parses back to exactly `value`.
std::string format(double value);
std::string format(long long value);

/// Parses text produced by format(); throws InputShapeError on junk.
double parse_double(std::string_view text);

/// Minimal comma-separated table: one header row, no quoting.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Writes atomically (temp file + rename). Throws IoError with the path.
void write(const Table& table, const std::filesystem::path& path);

Table read(const std::filesystem::path& path);

}  // namespace ofdmclip::csv
