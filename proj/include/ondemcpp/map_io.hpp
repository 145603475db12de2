#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>

#include "ondemcpp/workspace.hpp"

namespace ondemcpp {

struct MapParseError : std::runtime_error {
    MapParseError(int line, int column, const std::string& what)
        : std::runtime_error("map parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what) {}
};

namespace detail {

inline std::string read_line(std::istream& in, int line_no) {
    std::string line;
    if (!std::getline(in, line)) throw MapParseError(line_no, 1, "unexpected end of file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

inline int parse_header_int(const std::string& line, const std::string& key, int line_no) {
    if (line.rfind(key + " ", 0) != 0)
        throw MapParseError(line_no, 1, "expected '" + key + " <n>', got '" + line + "'");
    std::string rest = line.substr(key.size() + 1);
    try {
        std::size_t pos = 0;
        int v = std::stoi(rest, &pos);
        if (pos != rest.size() || v < 1) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw MapParseError(line_no, static_cast<int>(key.size()) + 2,
                            "'" + rest + "' is not a positive integer");
    }
}

}  // namespace detail

/// Parses the standard grid benchmark format: `type octile`, `height <Y>`,
/// `width <X>`, `map`, then Y rows of X characters. `.` and `G` are
/// passable; `@`, `O`, `T` are obstacles. File row 1 is the top of the map
/// (y = Y); column 1 is x = 1.
inline GroundTruthMap load_map(std::istream& in) {
    std::string type_line = detail::read_line(in, 1);
    if (type_line != "type octile")
        throw MapParseError(1, 1, "expected 'type octile', got '" + type_line + "'");
    int height = detail::parse_header_int(detail::read_line(in, 2), "height", 2);
    int width = detail::parse_header_int(detail::read_line(in, 3), "width", 3);
    std::string map_line = detail::read_line(in, 4);
    if (map_line != "map") throw MapParseError(4, 1, "expected 'map', got '" + map_line + "'");

    GroundTruthMap map;
    map.dims = GridDims{width, height};
    map.free.assign(static_cast<std::size_t>(width) * height, false);
    for (int row = 0; row < height; ++row) {
        int line_no = 5 + row;
        std::string line = detail::read_line(in, line_no);
        if (static_cast<int>(line.size()) != width)
            throw MapParseError(line_no, static_cast<int>(line.size()) + 1,
                                "row has " + std::to_string(line.size()) + " characters, expected " +
                                    std::to_string(width));
        int y = height - row;  // file top row is the highest y
        for (int col = 0; col < width; ++col) {
            char ch = line[col];
            bool passable;
            if (ch == '.' || ch == 'G')
                passable = true;
            else if (ch == '@' || ch == 'O' || ch == 'T')
                passable = false;
            else
                throw MapParseError(line_no, col + 1,
                                    std::string("unknown map character '") + ch + "'");
            map.free[cell_index(map.dims, Cell{col + 1, y})] = passable;
        }
    }
    return map;
}

inline GroundTruthMap load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open map file: " + path);
    return load_map(in);
}

/// Top-left crop: keeps x in [1, w] and the topmost h rows (y in
/// [Y-h+1, Y]), rebased so the crop is its own 1-based grid.
inline GroundTruthMap crop_map(const GroundTruthMap& map, int w, int h) {
    if (w < 1 || h < 1 || w > map.dims.width || h > map.dims.height)
        throw std::invalid_argument("crop_map: " + std::to_string(w) + "x" + std::to_string(h) +
                                    " does not fit in " + std::to_string(map.dims.width) + "x" +
                                    std::to_string(map.dims.height));
    GroundTruthMap out;
    out.dims = GridDims{w, h};
    out.free.assign(static_cast<std::size_t>(w) * h, false);
    int y_base = map.dims.height - h;  // source y = y_base + crop y
    for (int y = 1; y <= h; ++y)
        for (int x = 1; x <= w; ++x)
            out.free[cell_index(out.dims, Cell{x, y})] =
                map.free[cell_index(map.dims, Cell{x, y_base + y})];
    return out;
}

inline void save_map(const GroundTruthMap& map, std::ostream& out) {
    out << "type octile\n"
        << "height " << map.dims.height << "\n"
        << "width " << map.dims.width << "\n"
        << "map\n";
    for (int y = map.dims.height; y >= 1; --y) {
        for (int x = 1; x <= map.dims.width; ++x)
            out << (map.free[cell_index(map.dims, Cell{x, y})] ? '.' : '@');
        out << "\n";
    }
}

inline void save_map_file(const GroundTruthMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    save_map(map, out);
}

}  // namespace ondemcpp
