// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

/// @file run_io.hpp
/// @brief Column-table output as CSV or JSON with round-trip-exact numbers.

#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace spindrive {

/// Numeric payload of one command run: named columns, uniform rows.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// 17 significant digits: enough for exact double round-trips.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_csv(const Table& t, const std::string& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    for (size_t c = 0; c < t.columns.size(); ++c)
        f << (c ? "," : "") << t.columns[c];
    f << "\n";
    for (const auto& row : t.rows) {
        for (size_t c = 0; c < row.size(); ++c) f << (c ? "," : "") << fmt17(row[c]);
        f << "\n";
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

inline void write_json(const Table& t, const nlohmann::json& meta, const std::string& path) {
    nlohmann::json doc;
    doc["meta"] = meta;
    doc["columns"] = t.columns;
    doc["rows"] = t.rows;
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << doc.dump(2) << "\n";
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace spindrive
