#include "csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orbitherm/types.hpp"

namespace orbitherm::csv {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
}

std::optional<double> parse_period_comment(const std::string& line) {
    // accepts "# period = 6660" with flexible spacing
    std::string stripped;
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
    const std::string key = "#period=";
    if (stripped.rfind(key, 0) != 0) return std::nullopt;
    try {
        return std::stod(stripped.substr(key.size()));
    } catch (const std::exception&) {
        throw ParseError("malformed period comment: " + line);
    }
}

}  // namespace

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    Table table;
    std::string line;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (auto p = parse_period_comment(t)) table.period_override = *p;
            continue;
        }
        if (!header_seen) {
            table.header = split(t);
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        for (const std::string& cell : split(t)) {
            double v = 0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size())
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": not a number: '" + cell + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (!header_seen) throw ParseError(path.string() + ": missing header row");
    return table;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string join_row(const std::vector<double>& values) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

}  // namespace orbitherm::csv
