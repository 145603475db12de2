#pragma once

// Umbrella header: the whole planner/simulator/benchmark library.

#include "ondemcpp/assignment.hpp"
#include "ondemcpp/bench.hpp"
#include "ondemcpp/grid.hpp"
#include "ondemcpp/map_io.hpp"
#include "ondemcpp/mapgen.hpp"
#include "ondemcpp/metrics.hpp"
#include "ondemcpp/planner.hpp"
#include "ondemcpp/prioritized.hpp"
#include "ondemcpp/robots.hpp"
#include "ondemcpp/simulator.hpp"
#include "ondemcpp/workspace.hpp"
