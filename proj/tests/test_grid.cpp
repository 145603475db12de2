#include <catch2/catch_amalgamated.hpp>

#include "ondemcpp/grid.hpp"

using namespace ondemcpp;

TEST_CASE("cell_index and cell_at are inverse over the whole grid") {
    GridDims dims{7, 5};
    for (int i = 0; i < dims.cell_count(); ++i) {
        Cell c = cell_at(dims, i);
        REQUIRE(dims.contains(c.x, c.y));
        REQUIRE(cell_index(dims, c) == i);
    }
}

TEST_CASE("cell_index is row-major with (1,1) first") {
    GridDims dims{4, 3};
    REQUIRE(cell_index(dims, Cell{1, 1}) == 0);
    REQUIRE(cell_index(dims, Cell{4, 1}) == 3);
    REQUIRE(cell_index(dims, Cell{1, 2}) == 4);
    REQUIRE(cell_index(dims, Cell{4, 3}) == 11);
}

TEST_CASE("contains rejects out-of-range coordinates") {
    GridDims dims{4, 3};
    REQUIRE(dims.contains(1, 1));
    REQUIRE(dims.contains(4, 3));
    REQUIRE_FALSE(dims.contains(0, 1));
    REQUIRE_FALSE(dims.contains(1, 0));
    REQUIRE_FALSE(dims.contains(5, 1));
    REQUIRE_FALSE(dims.contains(1, 4));
}

TEST_CASE("cell ordering is lexicographic on (x, y)") {
    REQUIRE(Cell{1, 2} < Cell{2, 1});
    REQUIRE(Cell{2, 1} < Cell{2, 2});
    REQUIRE(Cell{3, 3} == Cell{3, 3});
}
