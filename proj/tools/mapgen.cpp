// Seeded generator for benchmark-format grid workspaces (maze, cavern, and
// city styles). Used to produce the checked-in files under maps/.

#include <iostream>

#include <CLI11.hpp>

#include "ondemcpp/map_io.hpp"
#include "ondemcpp/mapgen.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Seeded grid workspace generator"};

    std::string style = "maze", out;
    int width = 128, height = 128, corridor = 2;
    std::uint32_t seed = 1;

    app.add_option("--style", style, "maze | cavern | city")
        ->check(CLI::IsMember({"maze", "cavern", "city"}));
    app.add_option("--width", width)->check(CLI::PositiveNumber);
    app.add_option("--height", height)->check(CLI::PositiveNumber);
    app.add_option("--corridor", corridor, "Corridor width (maze style)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed);
    app.add_option("--out", out, "Output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        ondemcpp::GroundTruthMap map;
        if (style == "maze")
            map = ondemcpp::generate_maze(width, height, corridor, seed);
        else if (style == "cavern")
            map = ondemcpp::generate_cavern(width, height, seed);
        else
            map = ondemcpp::generate_city(width, height, seed);
        if (out.empty())
            ondemcpp::save_map(map, std::cout);
        else
            ondemcpp::save_map_file(map, out);
        std::cerr << style << " " << width << "x" << height << " seed=" << seed << ": "
                  << map.free_count() << " free cells, "
                  << (ondemcpp::check_connectivity(map) ? "connected" : "NOT connected") << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
