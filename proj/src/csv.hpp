#pragma once

// Internal CSV helpers shared by profile I/O and the CLI writers.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace orbitherm::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::optional<double> period_override;  // from a "# period = <s>" comment line
};

Table read_table(const std::filesystem::path& path);

// Shortest exact decimal plus padding to 17 significant digits; parsing the
// result reproduces the double bit-exactly.
std::string format_double(double value);

std::string join_row(const std::vector<double>& values);

}  // namespace orbitherm::csv
