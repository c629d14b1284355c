#include "goalnav/frontier.hpp"

#include <algorithm>
#include <cmath>

#include "goalnav/planner.hpp"

namespace goalnav {
namespace {

Cell mean_cell(const std::vector<Cell>& cells) {
  double sx = 0.0, sy = 0.0;
  for (const Cell& c : cells) {
    sx += c.x;
    sy += c.y;
  }
  const double n = static_cast<double>(cells.size());
  return Cell{static_cast<int>(std::lround(sx / n)),
              static_cast<int>(std::lround(sy / n))};
}

}  // namespace

std::vector<Frontier> extract_frontiers(const SemanticBevMap& map, int min_size,
                                        int max_count) {
  const int S = map.side();
  BoolGrid boundary(S, S, 0);

  constexpr int dx4[] = {1, -1, 0, 0};
  constexpr int dy4[] = {0, 0, 1, -1};

  for (int y = 0; y < S; ++y)
    for (int x = 0; x < S; ++x) {
      if (!map.explored.at(x, y) || map.obstacle.at(x, y)) continue;
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx4[k], ny = y + dy4[k];
        if (boundary.in_bounds(nx, ny) && !map.explored.at(nx, ny)) {
          boundary.at(x, y) = 1;
          break;
        }
      }
    }

  // 8-connected component labeling over boundary cells, scan order fixed for
  // determinism.
  constexpr int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
  constexpr int dy8[] = {0, 0, 1, -1, 1, -1, 1, -1};

  std::vector<Frontier> frontiers;
  BoolGrid visited(S, S, 0);
  std::vector<Cell> stack;
  for (int y = 0; y < S; ++y)
    for (int x = 0; x < S; ++x) {
      if (!boundary.at(x, y) || visited.at(x, y)) continue;
      Frontier f;
      stack.assign(1, Cell{x, y});
      visited.at(x, y) = 1;
      while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        f.cells.push_back(c);
        for (int k = 0; k < 8; ++k) {
          const int nx = c.x + dx8[k], ny = c.y + dy8[k];
          if (visited.in_bounds(nx, ny) && boundary.at(nx, ny) &&
              !visited.at(nx, ny)) {
            visited.at(nx, ny) = 1;
            stack.push_back(Cell{nx, ny});
          }
        }
      }
      if (static_cast<int>(f.cells.size()) < min_size) continue;
      std::sort(f.cells.begin(), f.cells.end());
      f.size = static_cast<int>(f.cells.size());
      f.centroid = mean_cell(f.cells);
      frontiers.push_back(std::move(f));
    }

  std::sort(frontiers.begin(), frontiers.end(),
            [](const Frontier& a, const Frontier& b) {
              if (a.size != b.size) return a.size > b.size;
              return a.centroid < b.centroid;
            });
  if (max_count >= 0 && static_cast<int>(frontiers.size()) > max_count)
    frontiers.resize(max_count);
  return frontiers;
}

std::vector<Frontier> frontier_reachability_filter(
    const std::vector<Frontier>& frontiers, const DistanceField& field) {
  std::vector<Frontier> out;
  for (const Frontier& f : frontiers)
    if (std::isfinite(field.arrival_at(f.centroid))) out.push_back(f);
  return out;
}

}  // namespace goalnav
