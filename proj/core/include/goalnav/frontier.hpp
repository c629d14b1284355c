#pragma once

#include <vector>

#include "goalnav/grid.hpp"
#include "goalnav/mapping.hpp"

namespace goalnav {

class DistanceField;

// Connected set of explored free cells on the boundary with unknown space.
struct Frontier {
  std::vector<Cell> cells;
  Cell centroid;
  int size = 0;
};

// Boundary cells are explored, free, and 4-adjacent to at least one unknown
// cell; components are 8-connected. Returns at most max_count frontiers,
// largest first, size ties broken by lexicographic centroid.
std::vector<Frontier> extract_frontiers(const SemanticBevMap& map, int min_size,
                                        int max_count);

// Drops frontiers whose centroid has infinite arrival time.
std::vector<Frontier> frontier_reachability_filter(
    const std::vector<Frontier>& frontiers, const DistanceField& field);

}  // namespace goalnav
