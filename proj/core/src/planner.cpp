#include "goalnav/planner.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace goalnav {

const char* action_name(Action a) {
  switch (a) {
    case Action::kStop: return "STOP";
    case Action::kMoveForward: return "MOVE_FORWARD";
    case Action::kTurnLeft: return "TURN_LEFT";
    case Action::kTurnRight: return "TURN_RIGHT";
    case Action::kTurnLeftS: return "TURN_LEFT_S";
    case Action::kTurnRightS: return "TURN_RIGHT_S";
  }
  return "?";
}

namespace {

struct HeapEntry {
  float t;
  int x, y;
  friend bool operator>(const HeapEntry& a, const HeapEntry& b) {
    if (a.t != b.t) return a.t > b.t;
    if (a.y != b.y) return a.y > b.y;
    return a.x > b.x;
  }
};

// Upwind quadratic update from the smallest finite neighbor per axis.
float eikonal_update(const FloatGrid& T, int x, int y, float h) {
  const float inf = std::numeric_limits<float>::infinity();
  float tx = inf, ty = inf;
  if (x > 0) tx = std::min(tx, T.at(x - 1, y));
  if (x + 1 < T.width()) tx = std::min(tx, T.at(x + 1, y));
  if (y > 0) ty = std::min(ty, T.at(x, y - 1));
  if (y + 1 < T.height()) ty = std::min(ty, T.at(x, y + 1));

  const float a = std::min(tx, ty);
  const float b = std::max(tx, ty);
  if (!std::isfinite(a)) return inf;
  if (!std::isfinite(b) || b - a >= h) return a + h;
  // (T-tx)^2 + (T-ty)^2 = h^2
  const float sum = tx + ty;
  const float disc = 2.f * h * h - (tx - ty) * (tx - ty);
  return 0.5f * (sum + std::sqrt(disc));
}

}  // namespace

DistanceField fmm_solve(const BoolGrid& traversable,
                        const std::vector<Cell>& goals, double cell_size,
                        std::optional<Cell> stop_at) {
  if (goals.empty())
    throw std::invalid_argument("fmm_solve: empty goal set");

  const int S = traversable.width();
  DistanceField field(S, cell_size);
  FloatGrid& T = field.arrival();
  Grid2D<std::uint8_t> accepted(S, S, 0);

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  std::vector<Cell> goal_cells;
  for (const Cell& g : goals) {
    if (!T.in_bounds(g)) continue;
    T.at(g) = 0.f;
    heap.push(HeapEntry{0.f, g.x, g.y});
    goal_cells.push_back(g);
  }
  field.set_goal_cells(goal_cells);
  if (goal_cells.empty())
    throw std::invalid_argument("fmm_solve: all goals out of bounds");

  const float h = static_cast<float>(cell_size);
  constexpr int dx[] = {1, -1, 0, 0};
  constexpr int dy[] = {0, 0, 1, -1};

  while (!heap.empty()) {
    const HeapEntry e = heap.top();
    heap.pop();
    if (accepted.at(e.x, e.y)) continue;
    accepted.at(e.x, e.y) = 1;
    if (stop_at && e.x == stop_at->x && e.y == stop_at->y) break;
    for (int k = 0; k < 4; ++k) {
      const int nx = e.x + dx[k], ny = e.y + dy[k];
      if (!T.in_bounds(nx, ny) || accepted.at(nx, ny)) continue;
      if (!traversable.at(nx, ny)) continue;  // zero speed, never reached
      const float t = eikonal_update(T, nx, ny, h);
      if (t < T.at(nx, ny)) {
        T.at(nx, ny) = t;
        heap.push(HeapEntry{t, nx, ny});
      }
    }
  }
  return field;
}

BoolGrid inflate_obstacles(const BoolGrid& obstacle, int radius_cells) {
  if (radius_cells <= 0) return obstacle;
  const int S = obstacle.width();
  BoolGrid out(S, obstacle.height(), 0);
  for (int y = 0; y < obstacle.height(); ++y)
    for (int x = 0; x < S; ++x) {
      if (!obstacle.at(x, y)) continue;
      for (int dy = -radius_cells; dy <= radius_cells; ++dy)
        for (int dx = -radius_cells; dx <= radius_cells; ++dx)
          if (out.in_bounds(x + dx, y + dy)) out.at(x + dx, y + dy) = 1;
    }
  return out;
}

std::optional<Cell> dilate_goal(const BoolGrid& traversable, Cell goal,
                                double max_radius_m, double cell_size) {
  if (traversable.in_bounds(goal) && traversable.at(goal)) return goal;
  const int r = static_cast<int>(std::floor(max_radius_m / cell_size));
  std::optional<Cell> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) {
      const Cell c{goal.x + dx, goal.y + dy};
      if (!traversable.in_bounds(c) || !traversable.at(c)) continue;
      const double d2 = double(dx) * dx + double(dy) * dy;
      if (d2 * cell_size * cell_size > max_radius_m * max_radius_m) continue;
      if (d2 < best_d2 || (d2 == best_d2 && best && c < *best)) {
        best_d2 = d2;
        best = c;
      }
    }
  return best;
}

StgResult extract_stg(const DistanceField& field, Cell agent_cell,
                      int max_cells) {
  StgResult r;
  r.cell = agent_cell;
  if (!std::isfinite(field.arrival_at(agent_cell))) return r;
  r.reachable = true;

  constexpr int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
  constexpr int dy8[] = {0, 0, 1, -1, 1, -1, 1, -1};

  Cell cur = agent_cell;
  for (int step = 0; step < max_cells; ++step) {
    float best_t = field.arrival_at(cur);
    if (best_t == 0.f) break;  // at a goal source
    Cell best = cur;
    for (int k = 0; k < 8; ++k) {
      const Cell n{cur.x + dx8[k], cur.y + dy8[k]};
      const float t = field.arrival_at(n);
      if (t < best_t || (t == best_t && t < field.arrival_at(cur) && n < best)) {
        best_t = t;
        best = n;
      }
    }
    if (best == cur) break;  // local minimum
    cur = best;
  }
  r.cell = cur;
  return r;
}

Action select_action(const Pose& agent, double stg_world_x, double stg_world_y,
                     bool stop_eligible, double stop_radius_m) {
  const double dx = stg_world_x - agent.x;
  const double dy = stg_world_y - agent.y;
  if (stop_eligible && std::hypot(dx, dy) <= stop_radius_m)
    return Action::kStop;

  const double theta_rel = normalize_angle(std::atan2(dx, dy) - agent.theta);
  const double mag = std::fabs(theta_rel);
  if (mag > kTurnCoarseRad / 2.0)
    return theta_rel > 0 ? Action::kTurnRight : Action::kTurnLeft;
  if (mag > kTurnFineRad / 2.0)
    return theta_rel > 0 ? Action::kTurnRightS : Action::kTurnLeftS;
  return Action::kMoveForward;
}

}  // namespace goalnav
