#pragma once

// Serialization of sweep tables and spectroscopy maps. CSV carries units and
// the config hash in #-prefixed header lines; json-map is a versioned schema
// with axes arrays plus row-major value arrays.

#include "nanoqed/spectroscopy.hpp"

#include <string>
#include <vector>

namespace nanoqed {

inline constexpr const char* kToolVersion = "nanoqed 0.1.0";
inline constexpr int kMapSchemaVersion = 1;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::string> units;   // one entry per column
    std::vector<std::vector<double>> rows;
    std::string config_hash;
    std::string tool_version = kToolVersion;
};

std::string export_table_csv(const ResultTable& table, int precision = 17);
ResultTable parse_table_csv(const std::string& text);

std::string export_map_csv(const SpectroscopyMap& map, const std::string& hash,
                           int precision = 17);
std::string export_map_json(const SpectroscopyMap& map, const std::string& hash);
SpectroscopyMap parse_map_json(const std::string& text, std::string* hash = nullptr);

// Two-column whitespace- or comma-separated trace (for `fit`).
void read_trace(const std::string& path, std::vector<double>* omega,
                std::vector<double>* amplitude);

void write_file(const std::string& path, const std::string& bytes);

} // namespace nanoqed
