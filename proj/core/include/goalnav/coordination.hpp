#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "goalnav/frontier.hpp"
#include "goalnav/mapping.hpp"
#include "goalnav/metrics.hpp"
#include "goalnav/perception.hpp"
#include "goalnav/planner.hpp"
#include "goalnav/scenario.hpp"
#include "goalnav/simulator.hpp"
#include "goalnav/value_map.hpp"

namespace goalnav {

struct NavConfig {
  MapConfig map;
  CameraIntrinsics intr;
  CameraExtrinsics ext{0.0, kSensorHeightM};
  double min_depth = kDepthMinM;
  double max_depth = kDepthMaxM;

  double tau_det = kTauDetDefault;
  int n_confirm = kNConfirmDefault;
  double blend_w = kBlendWeightDefault;
  double ucb_beta = kUcbBetaDefault;
  double ucb_radius_m = kUcbRadiusDefaultM;
  bool value_map_enabled = true;
  bool vlm_reasoning = true;   // off: frontier scores forced uniform
  bool share_value_map = false;

  int budget_steps = 500;
  int max_frontiers = 4;       // K
  int min_frontier_size = 4;
  int inflate_cells = 2;
  double goal_dilate_m = 0.6;
  double sticky_margin = 0.15;
  int stg_max_cells = 25;
};

NavConfig default_nav_config(const Scenario& sc);

// Element-wise max over semantic channels, OR over booleans. All maps must
// share geometry.
SemanticBevMap fuse_maps(const std::vector<const SemanticBevMap*>& maps);
SemanticBevMap fuse_maps(const std::vector<SemanticBevMap>& maps);

struct Allocation {
  // one entry per agent: index into the frontier list, or nullopt
  std::vector<std::optional<std::size_t>> assignment;
};

// Sequential greedy: agent 0 takes its argmax, the frontier is removed,
// agent 1 picks from the remainder, and so on.
Allocation allocate_frontiers(std::size_t frontier_count,
                              const std::vector<std::vector<double>>& utilities);

struct AgentState {
  int id = 0;
  Pose pose;
  VoxelGrid voxels;
  SemanticBevMap map;
  // running obstacle-band column sums so the BEV booleans update per point
  // instead of re-slicing the whole voxel grid every round
  FloatGrid obstacle_band;
  ValueMap value_map;
  ConfirmationState confirmation;
  std::optional<BevGoal> current_goal;
  std::optional<Cell> frontier_target;
  double frontier_target_utility = 0.0;
  // stagnation bookkeeping: targets that never resolve (e.g. frontiers onto
  // unobservable wall-interior cells) get blacklisted for the subtask
  std::vector<Cell> stale_targets;
  int rounds_near_target = 0;
  int steps_taken = 0;
  bool stop_called = false;
  double path_length = 0.0;
};

struct RoundOutcome {
  std::vector<Action> actions;
  std::vector<double> displacements;
  bool stop_called = false;
  int stopping_agent = -1;
};

// Lockstep multi-agent episode driver implementing the per-agent decision
// loop: observe -> map -> detect/confirm -> goal projection or frontier
// selection -> FMM -> STG -> discrete action, with a map fusion barrier per
// round.
class Team {
 public:
  Team(const World& world, const NavConfig& cfg, Detector& detector,
       Scorer& scorer, int num_agents);

  // One lockstep round for the active subtask.
  RoundOutcome run_round(const GoalQuery& query);

  SubtaskRecord run_subtask(const GoalQuery& query);
  EpisodeResult run_episode(const Scenario& sc);

  const std::vector<AgentState>& agents() const { return agents_; }
  std::vector<AgentState>& agents() { return agents_; }
  const SemanticBevMap& shared_map() const { return shared_map_; }

  // Fusion barrier (also usable standalone): refreshes the shared map from
  // the per-agent maps.
  void sync_round();

  const ValueMap& shared_value_map() const { return shared_value_map_; }

  // Invoked after every round with the round index within the current
  // subtask; used by the batch harness for map dumps and trajectories.
  std::function<void(const Team&, int round)> round_hook;

 private:
  struct PlanTarget {
    Cell cell;
    bool goal_mode = false;  // true: confirmed detection goal
    double world_x = 0.0, world_y = 0.0;
    bool valid = false;
  };

  void perceive_and_map(AgentState& agent, const Observation& obs,
                        const GoalQuery& query);
  void assign_frontier_targets(const std::vector<Observation>& obs,
                               const GoalQuery& query);
  PlanTarget plan_target(AgentState& agent);
  Action decide_action(AgentState& agent, const PlanTarget& target);
  void record_contact(AgentState& agent);
  // splat + incremental explored/obstacle update, equivalent to a full
  // refresh_from because counts only ever grow
  void integrate_points(AgentState& agent, const PointCloud& pc);

  const World* world_;
  NavConfig cfg_;
  Detector* detector_;
  Scorer* scorer_;
  std::vector<AgentState> agents_;
  SemanticBevMap shared_map_;
  ValueMap shared_value_map_;
  int subtask_round_ = 0;
};

}  // namespace goalnav
