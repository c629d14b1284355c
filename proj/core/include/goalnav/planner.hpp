#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "goalnav/geometry.hpp"
#include "goalnav/grid.hpp"

namespace goalnav {

enum class Action {
  kStop,
  kMoveForward,   // 0.25 m
  kTurnLeft,      // 30 deg
  kTurnRight,     // 30 deg
  kTurnLeftS,     // 10 deg
  kTurnRightS,    // 10 deg
};

constexpr double kForwardStepM = 0.25;
constexpr double kTurnCoarseRad = 30.0 * 3.14159265358979323846 / 180.0;
constexpr double kTurnFineRad = 10.0 * 3.14159265358979323846 / 180.0;
constexpr double kSuccessRadiusM = 1.0;

const char* action_name(Action a);

// FMM arrival-time field in meters; infinity marks cells unreachable from the
// goal set through traversable space.
class DistanceField {
 public:
  DistanceField() = default;
  DistanceField(int side, double cell_size)
      : cell_size_(cell_size),
        arrival_(side, side, std::numeric_limits<float>::infinity()) {}

  double cell_size() const { return cell_size_; }
  int side() const { return arrival_.width(); }
  float arrival_at(Cell c) const {
    return arrival_.in_bounds(c) ? arrival_.at(c)
                                 : std::numeric_limits<float>::infinity();
  }
  FloatGrid& arrival() { return arrival_; }
  const FloatGrid& arrival() const { return arrival_; }
  const std::vector<Cell>& goal_cells() const { return goals_; }
  void set_goal_cells(std::vector<Cell> goals) { goals_ = std::move(goals); }

 private:
  double cell_size_ = 0.05;
  FloatGrid arrival_;
  std::vector<Cell> goals_;
};

// First-order upwind fast marching with unit speed on traversable cells and
// zero speed elsewhere. Goal cells are sources with arrival 0 even when not
// traversable themselves. When stop_at is set the march halts once that cell
// is finalized; every cell with a smaller arrival is final by then, so
// steepest descent from stop_at is unaffected, but arrivals beyond it stay at
// their tentative values.
DistanceField fmm_solve(const BoolGrid& traversable,
                        const std::vector<Cell>& goals, double cell_size,
                        std::optional<Cell> stop_at = std::nullopt);

// Morphological dilation of the obstacle set by `radius_cells` (Chebyshev).
BoolGrid inflate_obstacles(const BoolGrid& obstacle, int radius_cells);

// Nearest traversable cell within max_radius_m of `goal`, for goals projected
// onto obstacles or unknown space. Empty when no such cell exists.
std::optional<Cell> dilate_goal(const BoolGrid& traversable, Cell goal,
                                double max_radius_m, double cell_size);

struct StgResult {
  Cell cell;
  bool reachable = false;  // false: agent cell has infinite arrival, replan
};

// Discrete steepest-descent walk on the arrival field, clipped to max_cells
// steps.
StgResult extract_stg(const DistanceField& field, Cell agent_cell,
                      int max_cells = 25);

// Bearing tracking with turn hysteresis: coarse turn beyond 15 deg, fine turn
// beyond 5 deg, forward otherwise. STOP when stop_eligible and the STG lies
// within the success radius.
Action select_action(const Pose& agent, double stg_world_x, double stg_world_y,
                     bool stop_eligible,
                     double stop_radius_m = kSuccessRadiusM);

}  // namespace goalnav
