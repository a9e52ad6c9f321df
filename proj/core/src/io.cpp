#include "nanoqed/io.hpp"

#include "nanoqed/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nanoqed {

using nlohmann::json;

namespace {

std::string format_number(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

} // namespace

std::string export_table_csv(const ResultTable& table, int precision) {
    if (table.columns.size() != table.units.size())
        throw IoError("export_table_csv: columns/units size mismatch");

    std::ostringstream out;
    out << "# " << table.tool_version << "\n";
    out << "# config_hash: " << table.config_hash << "\n";
    out << "# columns: " << join(table.columns, ",") << "\n";
    out << "# units: " << join(table.units, ",") << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw IoError("export_table_csv: ragged row");
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (double v : row)
            cells.push_back(format_number(v, precision));
        out << join(cells, ",") << "\n";
    }
    return out.str();
}

ResultTable parse_table_csv(const std::string& text) {
    ResultTable table;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto strip = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b);
            };
            if (line.rfind("# config_hash:", 0) == 0)
                table.config_hash = strip(line.substr(14));
            else if (line.rfind("# columns:", 0) == 0)
                for (auto& c : split(strip(line.substr(10)), ','))
                    table.columns.push_back(c);
            else if (line.rfind("# units:", 0) == 0)
                for (auto& u : split(strip(line.substr(8)), ','))
                    table.units.push_back(u);
            else if (line.rfind("# nanoqed", 0) == 0)
                table.tool_version = strip(line.substr(2));
            continue;
        }
        std::vector<double> row;
        for (const auto& cell : split(line, ','))
            row.push_back(std::strtod(cell.c_str(), nullptr));
        if (!table.columns.empty() && row.size() != table.columns.size())
            throw IoError("parse_table_csv: row width does not match header");
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty())
        throw IoError("parse_table_csv: missing columns header");
    return table;
}

std::string export_map_csv(const SpectroscopyMap& map, const std::string& hash,
                           int precision) {
    std::ostringstream out;
    out << "# " << kToolVersion << "\n";
    out << "# config_hash: " << hash << "\n";
    out << "# type: spectroscopy-map (amplitude; dimensionless, peak-normalized)\n";
    out << "# rows: probe frequency (Hz); data columns: one per flux point\n";
    {
        std::vector<std::string> cells;
        for (double x : map.x_axis)
            cells.push_back(format_number(x, precision));
        out << "# x_axis (Phi0): " << join(cells, ",") << "\n";
    }
    const std::size_t nx = map.x_axis.size();
    for (std::size_t iy = 0; iy < map.y_axis.size(); ++iy) {
        std::vector<std::string> cells;
        cells.reserve(nx + 1);
        cells.push_back(format_number(map.y_axis[iy], precision));
        for (std::size_t ix = 0; ix < nx; ++ix)
            cells.push_back(format_number(map.amplitude[iy * nx + ix], precision));
        out << join(cells, ",") << "\n";
    }
    return out.str();
}

std::string export_map_json(const SpectroscopyMap& map, const std::string& hash) {
    json j;
    j["schema_version"] = kMapSchemaVersion;
    j["tool"] = kToolVersion;
    j["config_hash"] = hash;
    j["x_axis"] = map.x_axis;
    j["x_unit"] = "Phi0";
    j["y_axis"] = map.y_axis;
    j["y_unit"] = "Hz";
    j["amplitude"] = map.amplitude;
    j["phase"] = map.phase;
    j["column_failed"] = map.column_failed;
    j["metadata"] = map.metadata;
    return j.dump();
}

SpectroscopyMap parse_map_json(const std::string& text, std::string* hash) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("parse_map_json: ") + e.what());
    }
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kMapSchemaVersion)
        throw IoError("parse_map_json: unsupported schema version");

    SpectroscopyMap map;
    map.x_axis = j["x_axis"].get<std::vector<double>>();
    map.y_axis = j["y_axis"].get<std::vector<double>>();
    map.amplitude = j["amplitude"].get<std::vector<double>>();
    map.phase = j["phase"].get<std::vector<double>>();
    map.column_failed = j["column_failed"].get<std::vector<std::uint8_t>>();
    map.metadata = j.value("metadata", std::string());
    if (map.amplitude.size() != map.x_axis.size() * map.y_axis.size())
        throw IoError("parse_map_json: values length does not match axes");
    if (hash)
        *hash = j.value("config_hash", std::string());
    return map;
}

void read_trace(const std::string& path, std::vector<double>* omega,
                std::vector<double>* amplitude) {
    std::ifstream in(path);
    if (!in)
        throw IoError("read_trace: cannot open '" + path + "'");
    omega->clear();
    amplitude->clear();
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        for (char& c : line)
            if (c == ',')
                c = ' ';
        std::istringstream ls(line);
        double w = 0.0, a = 0.0;
        if (!(ls >> w >> a))
            throw IoError("read_trace: malformed line: '" + line + "'");
        omega->push_back(w);
        amplitude->push_back(a);
    }
    if (omega->empty())
        throw IoError("read_trace: no data rows in '" + path + "'");
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("write_file: cannot open '" + path + "' for writing");
    out << bytes;
    if (!out)
        throw IoError("write_file: write failed for '" + path + "'");
}

} // namespace nanoqed
