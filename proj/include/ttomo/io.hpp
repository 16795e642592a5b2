#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ttomo/grid.hpp"
#include "ttomo/ray.hpp"

namespace ttomo {

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);  // 17 significant digits
    return buf;
}

}  // namespace detail

/// Grid-field directory: meta.json plus one CSV per component, N rows
/// (row index = x2) by N columns (column index = x1).
inline void save_grid_field(const std::filesystem::path& dir, const GridField& f) {
    std::filesystem::create_directories(dir);
    auto names = component_names(f.kind());
    nlohmann::json meta{{"schema", "tfg/1"},
                        {"kind", kind_name(f.kind())},
                        {"n", 2},
                        {"grid_n", f.grid().n},
                        {"extent", f.grid().extent},
                        {"components", names}};
    std::ofstream(dir / "meta.json") << meta.dump(2) << "\n";
    const int n = f.grid().n;
    for (int c = 0; c < f.components(); ++c) {
        std::ofstream out(dir / (names[c] + ".csv"));
        for (int b = 0; b < n; ++b) {
            for (int a = 0; a < n; ++a) {
                if (a) out << ',';
                out << detail::format_double(f.at(c, a, b));
            }
            out << '\n';
        }
    }
}

inline GridField load_grid_field(const std::filesystem::path& dir) {
    std::ifstream meta_in(dir / "meta.json");
    if (!meta_in) throw error("load_grid_field: cannot open " + (dir / "meta.json").string());
    nlohmann::json meta = nlohmann::json::parse(meta_in);
    if (meta.value("schema", "") != "tfg/1")
        throw error("load_grid_field: unsupported schema");
    FieldKind kind = kind_from_name(meta.at("kind").get<std::string>());
    Grid2 grid(meta.at("grid_n").get<int>(), meta.at("extent").get<double>());
    GridField f(grid, kind);
    auto names = meta.at("components").get<std::vector<std::string>>();
    if (static_cast<int>(names.size()) != f.components())
        throw error("load_grid_field: component list mismatch");
    for (int c = 0; c < f.components(); ++c) {
        std::ifstream in(dir / (names[c] + ".csv"));
        if (!in) throw error("load_grid_field: missing component file " + names[c]);
        std::string line;
        for (int b = 0; b < grid.n; ++b) {
            if (!std::getline(in, line)) throw error("load_grid_field: short file " + names[c]);
            std::stringstream ss(line);
            std::string cell;
            for (int a = 0; a < grid.n; ++a) {
                if (!std::getline(ss, cell, ',')) throw error("load_grid_field: short row");
                f.at(c, a, b) = std::strtod(cell.c_str(), nullptr);
            }
        }
    }
    return f;
}

/// Sinogram CSV: header "phi,s,channel,value", one row per sample.
inline void save_sinogram_csv(const std::filesystem::path& path, const Sinogram& sino) {
    std::ofstream out(path);
    out << "phi,s,channel,value\n";
    for (int a = 0; a < sino.lines.n_angles; ++a)
        for (int b = 0; b < sino.lines.n_offsets; ++b)
            for (std::size_t c = 0; c < sino.channels.size(); ++c)
                out << detail::format_double(sino.lines.angle(a)) << ','
                    << detail::format_double(sino.lines.offset(b)) << ',' << sino.channels[c]
                    << ',' << detail::format_double(sino.at(static_cast<int>(c), a, b)) << '\n';
}

}  // namespace ttomo
