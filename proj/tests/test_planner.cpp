#include <cmath>
#include <limits>
#include <queue>
#include <random>

#include "doctest.h"
#include "goalnav/planner.hpp"

using namespace goalnav;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// reference shortest path on cell centers with uniform per-move cost:
// 8-connected (Chebyshev) underestimates the continuum metric, 4-connected
// (Manhattan) overestimates it, so together they bracket the FMM arrival
std::vector<double> dijkstra(const BoolGrid& trav, Cell goal, double cell_size,
                             bool diagonals) {
  const int w = trav.width(), h = trav.height();
  std::vector<double> dist(static_cast<std::size_t>(w) * h, kInf);
  using QE = std::pair<double, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  const auto id = [w](int x, int y) { return y * w + x; };
  dist[id(goal.x, goal.y)] = 0.0;
  pq.push({0.0, id(goal.x, goal.y)});
  while (!pq.empty()) {
    const auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[i]) continue;
    const int x = i % w, y = i / w;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        if (!diagonals && dx != 0 && dy != 0) continue;
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        if (!trav.at(nx, ny)) continue;
        const double nd = d + cell_size;
        if (nd < dist[id(nx, ny)]) {
          dist[id(nx, ny)] = nd;
          pq.push({nd, id(nx, ny)});
        }
      }
  }
  return dist;
}

BoolGrid random_maze(int side, double obstacle_fraction, unsigned seed,
                     Cell keep_free) {
  BoolGrid trav(side, side, 1);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x)
      if (u(rng) < obstacle_fraction) trav.at(x, y) = 0;
  trav.at(keep_free) = 1;
  return trav;
}

}  // namespace

TEST_CASE("fmm_solve is exact on a 1D corridor") {
  BoolGrid trav(12, 12, 0);
  for (int x = 0; x < 12; ++x) trav.at(x, 3) = 1;
  const DistanceField f = fmm_solve(trav, {{0, 3}}, 0.5);
  for (int x = 0; x < 12; ++x)
    CHECK(f.arrival_at({x, 3}) == doctest::Approx(0.5 * x).epsilon(1e-6));
  CHECK(!std::isfinite(f.arrival_at({5, 7})));
}

TEST_CASE("fmm_solve seeds goals even on non-traversable cells") {
  BoolGrid trav(8, 8, 1);
  trav.at(4, 4) = 0;  // goal sits on an obstacle
  const DistanceField f = fmm_solve(trav, {{4, 4}}, 0.05);
  CHECK(f.arrival_at({4, 4}) == doctest::Approx(0.0));
  CHECK(std::isfinite(f.arrival_at({4, 5})));
  CHECK(f.arrival_at({4, 5}) <= doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("fmm arrivals lie within the Dijkstra connectivity bracket") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Cell goal{1, 1};
    const BoolGrid trav = random_maze(60, 0.2, seed, goal);
    const DistanceField f = fmm_solve(trav, {goal}, 0.1);
    const auto d8 = dijkstra(trav, goal, 0.1, true);
    const auto d4 = dijkstra(trav, goal, 0.1, false);
    for (int y = 0; y < 60; ++y)
      for (int x = 0; x < 60; ++x) {
        if (!trav.at(x, y)) continue;
        const double a = f.arrival_at({x, y});
        if (!std::isfinite(a)) {
          // the upwind stencil propagates through edges, so FMM reachability
          // matches 4-connectivity (8-connected paths may still exist)
          CHECK(!std::isfinite(d4[y * 60 + x]));
          continue;
        }
        CHECK(a >= d8[y * 60 + x] - 0.1);
        CHECK(a <= d4[y * 60 + x] + 0.1);
      }
  }
}

TEST_CASE("inflate_obstacles grows by Chebyshev radius") {
  BoolGrid obs(9, 9, 0);
  obs.at(4, 4) = 1;
  const BoolGrid grown = inflate_obstacles(obs, 2);
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 9; ++x) {
      const bool inside = std::abs(x - 4) <= 2 && std::abs(y - 4) <= 2;
      CHECK(grown.at(x, y) == (inside ? 1 : 0));
    }
  // radius 0 is the identity
  CHECK(inflate_obstacles(obs, 0) == obs);
}

TEST_CASE("dilate_goal snaps onto the nearest traversable cell") {
  BoolGrid trav(20, 20, 1);
  for (int y = 4; y <= 8; ++y)
    for (int x = 4; x <= 8; ++x) trav.at(x, y) = 0;
  const auto snapped = dilate_goal(trav, {6, 6}, 0.6, 0.05);
  REQUIRE(snapped.has_value());
  CHECK(trav.at(*snapped) == 1);
  const int cheb =
      std::max(std::abs(snapped->x - 6), std::abs(snapped->y - 6));
  CHECK(cheb <= 12);  // 0.6 m / 0.05 m

  // already traversable: unchanged
  CHECK(dilate_goal(trav, {1, 1}, 0.6, 0.05) == Cell{1, 1});

  // nothing reachable within the radius
  BoolGrid blocked(20, 20, 0);
  CHECK(!dilate_goal(blocked, {10, 10}, 0.3, 0.05).has_value());
}

TEST_CASE("extract_stg walks downhill and clips at max_cells") {
  BoolGrid trav(30, 30, 1);
  const DistanceField f = fmm_solve(trav, {{0, 0}}, 0.05);

  const StgResult clipped = extract_stg(f, {25, 0}, 5);
  CHECK(clipped.reachable);
  CHECK(clipped.cell == Cell{20, 0});

  const StgResult full = extract_stg(f, {3, 4}, 25);
  CHECK(full.reachable);
  CHECK(full.cell == Cell{0, 0});

  BoolGrid split(30, 30, 1);
  for (int y = 0; y < 30; ++y) split.at(15, y) = 0;
  const DistanceField g = fmm_solve(split, {{0, 0}}, 0.05);
  const StgResult cut = extract_stg(g, {20, 5}, 25);
  CHECK(!cut.reachable);
}

TEST_CASE("select_action applies turn hysteresis around the bearing") {
  const Pose agent{0.0, 0.0, 0.0};  // facing +y
  const auto target = [](double bearing_deg) {
    const double b = bearing_deg * kPi / 180.0;
    return std::pair{2.0 * std::sin(b), 2.0 * std::cos(b)};
  };

  auto [x0, y0] = target(0.0);
  CHECK(select_action(agent, x0, y0, false) == Action::kMoveForward);
  auto [x1, y1] = target(4.0);
  CHECK(select_action(agent, x1, y1, false) == Action::kMoveForward);
  auto [x2, y2] = target(10.0);
  CHECK(select_action(agent, x2, y2, false) == Action::kTurnRightS);
  auto [x3, y3] = target(20.0);
  CHECK(select_action(agent, x3, y3, false) == Action::kTurnRight);
  auto [x4, y4] = target(-10.0);
  CHECK(select_action(agent, x4, y4, false) == Action::kTurnLeftS);
  auto [x5, y5] = target(-20.0);
  CHECK(select_action(agent, x5, y5, false) == Action::kTurnLeft);
  auto [x6, y6] = target(170.0);
  CHECK(select_action(agent, x6, y6, false) == Action::kTurnRight);
}

TEST_CASE("select_action stops only when eligible and inside the radius") {
  const Pose agent{0.0, 0.0, 0.0};
  CHECK(select_action(agent, 0.0, 0.5, true) == Action::kStop);
  CHECK(select_action(agent, 0.0, 0.5, false) == Action::kMoveForward);
  CHECK(select_action(agent, 0.0, 2.0, true) == Action::kMoveForward);
  CHECK(select_action(agent, 0.0, 0.9, true, 0.8) == Action::kMoveForward);
  CHECK(select_action(agent, 0.0, 0.7, true, 0.8) == Action::kStop);
}
