#include "goalnav/coordination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace goalnav {

NavConfig default_nav_config(const Scenario& sc) {
  NavConfig cfg;
  cfg.map.side = std::max(sc.dim_x, sc.dim_y);
  cfg.map.cell_size = sc.cell_size;
  cfg.map.z_bins = sc.dim_z;
  cfg.map.z_obstacle_max = kSensorHeightM + 0.50;
  cfg.intr = compute_intrinsics(360, 640, kHfovDefaultRad, 160, 120);
  cfg.ext = CameraExtrinsics{0.0, kSensorHeightM};
  return cfg;
}

SemanticBevMap fuse_maps(const std::vector<const SemanticBevMap*>& maps) {
  if (maps.empty()) throw std::invalid_argument("fuse_maps: empty input");
  SemanticBevMap out = *maps.front();
  for (std::size_t k = 1; k < maps.size(); ++k) {
    const SemanticBevMap& m = *maps[k];
    if (m.side() != out.side() || m.origin_x != out.origin_x ||
        m.origin_y != out.origin_y || m.cell_size != out.cell_size ||
        m.semantic.size() != out.semantic.size())
      throw std::invalid_argument("fuse_maps: geometry mismatch");
    for (std::size_t i = 0; i < out.obstacle.size(); ++i) {
      out.obstacle.data()[i] |= m.obstacle.data()[i];
      out.explored.data()[i] |= m.explored.data()[i];
    }
    for (std::size_t c = 0; c < out.semantic.size(); ++c)
      for (std::size_t i = 0; i < out.semantic[c].size(); ++i)
        out.semantic[c].data()[i] =
            std::max(out.semantic[c].data()[i], m.semantic[c].data()[i]);
  }
  return out;
}

SemanticBevMap fuse_maps(const std::vector<SemanticBevMap>& maps) {
  std::vector<const SemanticBevMap*> ptrs;
  for (const auto& m : maps) ptrs.push_back(&m);
  return fuse_maps(ptrs);
}

Allocation allocate_frontiers(
    std::size_t frontier_count,
    const std::vector<std::vector<double>>& utilities) {
  Allocation alloc;
  std::vector<bool> taken(frontier_count, false);
  for (const auto& row : utilities) {
    std::optional<std::size_t> pick;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < frontier_count && f < row.size(); ++f) {
      if (taken[f]) continue;
      if (row[f] > best) {
        best = row[f];
        pick = f;
      }
    }
    if (pick) taken[*pick] = true;
    alloc.assignment.push_back(pick);
  }
  return alloc;
}

Team::Team(const World& world, const NavConfig& cfg, Detector& detector,
           Scorer& scorer, int num_agents)
    : world_(&world), cfg_(cfg), detector_(&detector), scorer_(&scorer),
      shared_map_(cfg.map),
      shared_value_map_(cfg.map.side, cfg.map.cell_size, cfg.map.origin_x,
                        cfg.map.origin_y) {
  if (num_agents < 1) throw std::invalid_argument("Team: need >= 1 agent");
  const auto& spawns = world.spawn_points();
  if (spawns.empty()) throw std::invalid_argument("Team: world has no spawns");
  for (int i = 0; i < num_agents; ++i) {
    AgentState a;
    a.id = i;
    a.pose = spawns[i % spawns.size()];
    a.voxels = VoxelGrid(cfg.map.side, cfg.map.z_bins, cfg.map.semantic_channels,
                         cfg.map.cell_size, cfg.map.origin_x, cfg.map.origin_y);
    a.map = SemanticBevMap(cfg.map);
    a.obstacle_band = FloatGrid(cfg.map.side, cfg.map.side, 0.f);
    a.value_map = ValueMap(cfg.map.side, cfg.map.cell_size, cfg.map.origin_x,
                           cfg.map.origin_y);
    agents_.push_back(std::move(a));
  }
}

void Team::sync_round() {
  std::vector<const SemanticBevMap*> maps;
  for (const auto& a : agents_) maps.push_back(&a.map);
  shared_map_ = fuse_maps(maps);
  if (cfg_.share_value_map) {
    std::vector<const ValueMap*> vms;
    for (const auto& a : agents_) vms.push_back(&a.value_map);
    shared_value_map_ = fuse_value_maps(vms);
  }
}

void Team::perceive_and_map(AgentState& agent, const Observation& obs,
                            const GoalQuery& query) {
  // mapping: backproject -> geocentric -> world -> splat
  const PointCloud cam =
      backproject_depth(obs.depth, cfg_.intr, cfg_.min_depth, cfg_.max_depth);
  const PointCloud world_pc =
      world_transform(to_geocentric(cam, cfg_.ext), agent.pose);
  integrate_points(agent, world_pc);

  // detection; an unavailable backend counts as a no-detection frame
  std::vector<Detection> detections;
  try {
    detections = detector_->detect(obs.rgb, query);
  } catch (const DetectorUnavailable&) {
  }

  const ConfirmResult cr =
      confirm(agent.confirmation, detections, cfg_.tau_det, cfg_.n_confirm);
  agent.confirmation = cr.state;

  if (cfg_.value_map_enabled) {
    double c = 0.0;
    for (const Detection& d : detections)
      c = std::max(c, std::clamp(d.confidence, 0.0, 1.0));
    const ConeMask mask = build_cone_mask(
        obs.depth, cfg_.intr, cfg_.ext, agent.pose, cfg_.map.side,
        cfg_.map.cell_size, cfg_.map.origin_x, cfg_.map.origin_y,
        cfg_.min_depth, cfg_.max_depth);
    bayes_update(agent.value_map, c, mask);
  }

  if (cr.confirmed && !agent.current_goal) {
    const GoalProjectResult gp = project_goal_mask(
        agent.confirmation.last_confirmed.mask, obs.depth, cfg_.intr, cfg_.ext,
        agent.pose, agent.map, /*goal_channel=*/1, cfg_.min_depth,
        cfg_.max_depth);
    if (gp) {
      agent.current_goal = gp.goal;
      agent.frontier_target.reset();
    }
    // no valid depth under the mask: keep exploring
  }
}

namespace {

// Traversability view of the fused map. Unknown cells are passable in
// frontier mode (plans must cross the boundary) and blocked in goal mode.
BoolGrid traversable_grid(const SemanticBevMap& map, int inflate_cells,
                          bool unknown_passable, Cell agent_cell) {
  const BoolGrid inflated = inflate_obstacles(map.obstacle, inflate_cells);
  BoolGrid out(map.side(), map.side(), 0);
  for (int y = 0; y < map.side(); ++y)
    for (int x = 0; x < map.side(); ++x) {
      if (inflated.at(x, y)) continue;
      if (!unknown_passable && !map.explored.at(x, y)) continue;
      out.at(x, y) = 1;
    }
  (void)agent_cell;
  return out;
}

// True when every cell crossed by the segment between the two cell centers is
// traversable; keeps the bearing controller from aiming across corners.
bool line_of_sight(const BoolGrid& trav, Cell a, Cell b) {
  const int steps = std::max(std::abs(b.x - a.x), std::abs(b.y - a.y)) * 4;
  for (int i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const Cell c{static_cast<int>(std::lround(a.x + (b.x - a.x) * t)),
                 static_cast<int>(std::lround(a.y + (b.y - a.y) * t))};
    if (c == a) continue;
    if (!trav.in_bounds(c) || !trav.at(c)) return false;
  }
  return true;
}

// Agent stuck inside the inflation margin: shortest 8-connected walk over
// non-obstacle cells to the nearest strictly traversable cell.
std::optional<Cell> escape_target(const SemanticBevMap& map,
                                  const BoolGrid& strict, Cell ac) {
  static const int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
  static const int dy8[] = {0, 0, 1, -1, 1, -1, 1, -1};
  BoolGrid seen(map.side(), map.side(), 0);
  std::vector<Cell> queue{ac};
  seen.at(ac) = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Cell c = queue[head];
    if (strict.in_bounds(c) && strict.at(c) && !(c == ac)) return c;
    for (int k = 0; k < 8; ++k) {
      const Cell n{c.x + dx8[k], c.y + dy8[k]};
      if (!seen.in_bounds(n) || seen.at(n) || map.obstacle.at(n)) continue;
      seen.at(n) = 1;
      queue.push_back(n);
    }
  }
  return std::nullopt;
}

bool near_any(const std::vector<Cell>& cells, Cell c, int radius) {
  for (const Cell& s : cells)
    if (std::abs(c.x - s.x) <= radius && std::abs(c.y - s.y) <= radius)
      return true;
  return false;
}

std::optional<Cell> nearest_unexplored(const SemanticBevMap& map,
                                       const DistanceField& from_agent,
                                       const std::vector<Cell>& blacklist) {
  std::optional<Cell> best;
  float best_t = std::numeric_limits<float>::infinity();
  for (int y = 0; y < map.side(); ++y)
    for (int x = 0; x < map.side(); ++x) {
      if (map.explored.at(x, y)) continue;
      if (near_any(blacklist, Cell{x, y}, 3)) continue;
      const float t = from_agent.arrival_at(Cell{x, y});
      if (t < best_t) {
        best_t = t;
        best = Cell{x, y};
      }
    }
  return best;
}

}  // namespace

void Team::assign_frontier_targets(const std::vector<Observation>& obs,
                                   const GoalQuery& query) {
  std::vector<Frontier> frontiers =
      extract_frontiers(shared_map_, cfg_.min_frontier_size, cfg_.max_frontiers);

  // agents that still explore (no confirmed goal)
  std::vector<int> explorers;
  for (const auto& a : agents_)
    if (!a.current_goal) explorers.push_back(a.id);
  if (explorers.empty()) return;

  // per-explorer reachability field from its own position
  std::vector<DistanceField> agent_fields(agents_.size());
  for (int id : explorers) {
    const AgentState& a = agents_[id];
    const Cell ac = a.map.world_to_cell(a.pose.x, a.pose.y);
    const BoolGrid trav =
        traversable_grid(shared_map_, cfg_.inflate_cells, true, ac);
    agent_fields[id] = fmm_solve(trav, {ac}, cfg_.map.cell_size);
  }

  if (frontiers.empty()) {
    for (int id : explorers) {
      agents_[id].frontier_target = nearest_unexplored(
          shared_map_, agent_fields[id], agents_[id].stale_targets);
      agents_[id].frontier_target_utility = 0.0;
    }
    return;
  }

  // utilities per explorer
  std::vector<std::vector<double>> utilities(agents_.size());
  for (int id : explorers) {
    AgentState& a = agents_[id];
    FrontierScores scores =
        cfg_.vlm_reasoning
            ? scorer_->score_frontiers(obs[id].rgb, query, frontiers, "")
            : FrontierScores(frontiers.size(), kUniformFallbackScore);
    std::vector<double> values(frontiers.size(), 0.5);
    if (cfg_.value_map_enabled) {
      const ValueMap& vm = cfg_.share_value_map ? shared_value_map_ : a.value_map;
      std::vector<double> ucb(frontiers.size());
      for (std::size_t f = 0; f < frontiers.size(); ++f)
        ucb[f] = ucb_score(vm, frontiers[f], cfg_.ucb_radius_m, cfg_.ucb_beta);
      values = normalize_values(ucb);
    }
    const double w = cfg_.value_map_enabled ? cfg_.blend_w : 0.0;
    utilities[id] = blend_utility(scores, values, w);
    for (std::size_t f = 0; f < frontiers.size(); ++f) {
      if (!std::isfinite(agent_fields[id].arrival_at(frontiers[f].centroid)) ||
          near_any(a.stale_targets, frontiers[f].centroid, 3))
        utilities[id][f] = -1.0;  // unreachable or known stagnant
    }
  }

  // sticky hold: keep the previous frontier unless its utility fell more
  // than the margin below the agent's current best
  std::vector<bool> taken(frontiers.size(), false);
  std::vector<bool> assigned(agents_.size(), false);
  for (int id : explorers) {
    AgentState& a = agents_[id];
    if (!a.frontier_target) continue;
    std::optional<std::size_t> match;
    for (std::size_t f = 0; f < frontiers.size(); ++f) {
      const Cell& c = frontiers[f].centroid;
      if (std::abs(c.x - a.frontier_target->x) <= 3 &&
          std::abs(c.y - a.frontier_target->y) <= 3 && !taken[f]) {
        match = f;
        break;
      }
    }
    if (!match) continue;
    const double best =
        *std::max_element(utilities[id].begin(), utilities[id].end());
    if (utilities[id][*match] >= best - cfg_.sticky_margin &&
        utilities[id][*match] >= 0.0) {
      taken[*match] = true;
      assigned[id] = true;
      a.frontier_target = frontiers[*match].centroid;
      a.frontier_target_utility = utilities[id][*match];
    }
  }

  // sequential greedy over the rest, agent id order
  std::vector<int> remaining;
  std::vector<std::vector<double>> reduced;
  std::vector<std::size_t> col_map;
  for (std::size_t f = 0; f < frontiers.size(); ++f)
    if (!taken[f]) col_map.push_back(f);
  for (int id : explorers) {
    if (assigned[id]) continue;
    remaining.push_back(id);
    std::vector<double> row;
    for (std::size_t f : col_map) row.push_back(utilities[id][f]);
    reduced.push_back(std::move(row));
  }
  const Allocation alloc = allocate_frontiers(col_map.size(), reduced);
  for (std::size_t k = 0; k < remaining.size(); ++k) {
    AgentState& a = agents_[remaining[k]];
    if (alloc.assignment[k] && reduced[k][*alloc.assignment[k]] >= 0.0) {
      const std::size_t f = col_map[*alloc.assignment[k]];
      a.frontier_target = frontiers[f].centroid;
      a.frontier_target_utility = reduced[k][*alloc.assignment[k]];
    } else {
      // surplus agent (or nothing reachable): head for the nearest
      // unexplored reachable cell
      a.frontier_target =
          nearest_unexplored(shared_map_, agent_fields[a.id], a.stale_targets);
      a.frontier_target_utility = 0.0;
    }
  }
}

Team::PlanTarget Team::plan_target(AgentState& agent) {
  PlanTarget t;
  if (agent.current_goal) {
    const Cell ac = agent.map.world_to_cell(agent.pose.x, agent.pose.y);
    const BoolGrid trav =
        traversable_grid(shared_map_, cfg_.inflate_cells, false, ac);
    const std::optional<Cell> dilated = dilate_goal(
        trav, agent.current_goal->centroid, cfg_.goal_dilate_m,
        cfg_.map.cell_size);
    if (dilated) {
      t.cell = *dilated;
      t.goal_mode = true;
      t.valid = true;
      shared_map_.cell_to_world(agent.current_goal->centroid, t.world_x,
                                t.world_y);
      return t;
    }
    // projected goal sits in unreachable space (behind-wall failure):
    // clear it and resume frontier exploration
    agent.current_goal.reset();
  }
  if (agent.frontier_target) {
    t.cell = *agent.frontier_target;
    t.valid = true;
    shared_map_.cell_to_world(t.cell, t.world_x, t.world_y);
  }
  return t;
}

Action Team::decide_action(AgentState& agent, const PlanTarget& target) {
  const Cell ac = agent.map.world_to_cell(agent.pose.x, agent.pose.y);
  // clearance ignores exploredness: unknown pinholes in observed floor are
  // not hazards, mapped obstacles plus inflation are
  const BoolGrid clearance =
      traversable_grid(shared_map_, cfg_.inflate_cells, true, ac);
  BoolGrid strict;
  const BoolGrid* trav = &clearance;
  if (target.goal_mode) {
    strict = traversable_grid(shared_map_, cfg_.inflate_cells, false, ac);
    trav = &strict;
  }

  if (target.goal_mode) {
    // STOP check against the projected goal location itself; the projected
    // centroid sits on the object's visible face, so stop a little inside
    // the success radius to absorb projection offset
    const Action maybe_stop =
        select_action(agent.pose, target.world_x, target.world_y, true,
                      0.8 * kSuccessRadiusM);
    if (maybe_stop == Action::kStop) return Action::kStop;
  }

  if (clearance.in_bounds(ac) && !clearance.at(ac)) {
    // inside the inflation margin: step out before planning
    const std::optional<Cell> out = escape_target(shared_map_, clearance, ac);
    if (!out) return Action::kTurnLeft;
    double ex, ey;
    shared_map_.cell_to_world(*out, ex, ey);
    return select_action(agent.pose, ex, ey, false);
  }

  if (!target.valid) return Action::kTurnLeft;  // scan in place

  DistanceField field = fmm_solve(*trav, {target.cell}, cfg_.map.cell_size, ac);
  if (!std::isfinite(field.arrival_at(ac)) && target.goal_mode) {
    // the confirmed goal lies beyond explored space; plan optimistically
    // through unknown cells and let contact mapping correct the route
    field = fmm_solve(clearance, {target.cell}, cfg_.map.cell_size, ac);
  }
  if (!std::isfinite(field.arrival_at(ac))) {
    if (target.goal_mode)
      agent.current_goal.reset();  // unreachable goal, replan signal
    else
      agent.frontier_target.reset();
    return Action::kTurnLeft;
  }

  // Walk the descent path; aim at the farthest waypoint still in line of
  // sight (aiming at the raw clipped endpoint can point through a wall the
  // path bends around), defaulting to the adjacent first step.
  Cell aim = ac;
  Cell walker = ac;
  for (int i = 0; i < cfg_.stg_max_cells; ++i) {
    const StgResult one = extract_stg(field, walker, 1);
    if (one.cell == walker) break;
    walker = one.cell;
    if (i == 0 || line_of_sight(clearance, ac, walker)) aim = walker;
  }
  if (aim == ac) {
    // arrived at the target region without a confirmed goal: rotate to look
    return Action::kTurnLeft;
  }
  double sx, sy;
  shared_map_.cell_to_world(aim, sx, sy);
  return select_action(agent.pose, sx, sy, false);
}

void Team::record_contact(AgentState& agent) {
  // Surfaces inside the camera's minimum range never show up in depth, so a
  // blocked forward step is the only signal they exist. Write the touched
  // obstacle cells into the voxel accumulator like any sensed point.
  const BoolGrid& truth = world_->bev_obstacle();
  PointCloud contact;
  const double reach = kAgentRadiusM + 1.5 * cfg_.map.cell_size;
  for (double ang = -1.2; ang <= 1.2; ang += 0.15) {
    const double h = agent.pose.theta + ang;
    const double px = agent.pose.x + std::sin(h) * reach;
    const double py = agent.pose.y + std::cos(h) * reach;
    const Cell c{static_cast<int>(px / world_->cell_size()),
                 static_cast<int>(py / world_->cell_size())};
    if (!truth.in_bounds(c) || !truth.at(c)) continue;
    const double mid =
        0.5 * (cfg_.map.z_obstacle_min + cfg_.map.z_obstacle_max);
    contact.points.push_back({px, py, mid});
    contact.valid.push_back(1);
  }
  if (!contact.points.empty()) integrate_points(agent, contact);
}

void Team::integrate_points(AgentState& agent, const PointCloud& pc) {
  agent.voxels.splat(pc);
  const VoxelGrid& vox = agent.voxels;
  const int b_lo = std::max(0, vox.height_to_bin(cfg_.map.z_obstacle_min));
  const int b_hi =
      std::min(cfg_.map.z_bins - 1, vox.height_to_bin(cfg_.map.z_obstacle_max));
  for (std::size_t i = 0; i < pc.points.size(); ++i) {
    if (!pc.valid[i]) continue;
    const Vec3& p = pc.points[i];
    const Cell c = vox.world_to_cell(p.x, p.y);
    const int z = vox.height_to_bin(p.z);
    if (!agent.map.explored.in_bounds(c) || z < 0 || z >= cfg_.map.z_bins)
      continue;
    agent.map.explored.at(c) = 1;
    if (z >= b_lo && z <= b_hi) {
      agent.obstacle_band.at(c) += 1.f;
      if (agent.obstacle_band.at(c) > cfg_.map.tau_obs)
        agent.map.obstacle.at(c) = 1;
    }
  }
}

RoundOutcome Team::run_round(const GoalQuery& query) {
  RoundOutcome out;
  out.actions.assign(agents_.size(), Action::kStop);
  out.displacements.assign(agents_.size(), 0.0);

  std::vector<Observation> obs;
  obs.reserve(agents_.size());
  for (const AgentState& a : agents_)
    obs.push_back(render(*world_, a.pose, cfg_.intr, cfg_.ext));

  for (std::size_t i = 0; i < agents_.size(); ++i)
    perceive_and_map(agents_[i], obs[i], query);

  sync_round();
  assign_frontier_targets(obs, query);

  for (AgentState& a : agents_) {
    const PlanTarget target = plan_target(a);
    const Action action = decide_action(a, target);
    out.actions[a.id] = action;
    a.steps_taken += 1;
    if (action == Action::kStop) {
      a.stop_called = true;
      out.stop_called = true;
      out.stopping_agent = a.id;
      break;  // subtask halts on the first STOP
    }
    const StepResult sr = step(*world_, a.pose, action);
    out.displacements[a.id] =
        std::hypot(sr.pose.x - a.pose.x, sr.pose.y - a.pose.y);
    a.path_length += out.displacements[a.id];
    a.pose = sr.pose;
    if (sr.collided) record_contact(a);

    // a target the agent sits next to for a whole in-place scan without it
    // resolving will never resolve; retire it for this subtask
    if (a.frontier_target && !a.current_goal) {
      const Cell ac = a.map.world_to_cell(a.pose.x, a.pose.y);
      const bool near = std::abs(ac.x - a.frontier_target->x) <= 3 &&
                        std::abs(ac.y - a.frontier_target->y) <= 3;
      a.rounds_near_target = near ? a.rounds_near_target + 1 : 0;
      if (a.rounds_near_target >= 14) {
        a.stale_targets.push_back(*a.frontier_target);
        a.frontier_target.reset();
        a.rounds_near_target = 0;
      }
    } else {
      a.rounds_near_target = 0;
    }
  }
  if (round_hook) round_hook(*this, subtask_round_);
  ++subtask_round_;
  return out;
}

SubtaskRecord Team::run_subtask(const GoalQuery& query) {
  SubtaskRecord rec;
  rec.goal_label = query.text;

  // per-subtask resets; maps and value maps persist within the episode
  for (AgentState& a : agents_) {
    a.confirmation = ConfirmationState{query.query_id, 0, {}};
    a.current_goal.reset();
    a.frontier_target.reset();
    a.frontier_target_utility = 0.0;
    a.stale_targets.clear();
    a.rounds_near_target = 0;
    a.steps_taken = 0;
    a.stop_called = false;
    a.path_length = 0.0;
    if (a.map.semantic.size() > 1) a.map.semantic[1].fill(0.f);
  }
  subtask_round_ = 0;

  const std::vector<int> goal_ids = world_->find_objects(query.text);

  double d_geo = std::numeric_limits<double>::infinity();
  for (const AgentState& a : agents_)
    for (int id : goal_ids)
      d_geo = std::min(d_geo, ground_truth_geodesic(*world_, a.pose, id));
  rec.d_geo = std::isfinite(d_geo) ? std::max(d_geo, cfg_.map.cell_size)
                                   : cfg_.map.cell_size;

  std::vector<std::vector<double>> displacements;
  int stopping_agent = -1;
  for (int round = 0; round < cfg_.budget_steps; ++round) {
    const RoundOutcome ro = run_round(query);
    displacements.push_back(ro.displacements);
    if (ro.stop_called) {
      rec.stop_called = true;
      stopping_agent = ro.stopping_agent;
      break;
    }
  }
  rec.steps = subtask_round_;
  rec.d_agent = accumulate_multiagent_path(displacements);

  std::vector<double> final_dists;
  for (const AgentState& a : agents_) {
    double best = std::numeric_limits<double>::infinity();
    for (int id : goal_ids)
      best = std::min(best, distance_to_footprint(*world_, a.pose, id));
    final_dists.push_back(best);
  }
  rec.dtg_final = final_dists.empty()
                      ? std::numeric_limits<double>::infinity()
                      : dtg(final_dists);

  if (rec.stop_called && stopping_agent >= 0) {
    double stop_dist = std::numeric_limits<double>::infinity();
    for (int id : goal_ids)
      stop_dist = std::min(
          stop_dist,
          distance_to_footprint(*world_, agents_[stopping_agent].pose, id));
    rec.success = stop_dist <= kSuccessRadiusM;
  }
  return rec;
}

EpisodeResult Team::run_episode(const Scenario& sc) {
  EpisodeResult ep;
  ep.scenario_name = sc.name;
  for (std::size_t i = 0; i < sc.subtasks.size(); ++i) {
    GoalQuery q{sc.subtasks[i], static_cast<int>(i)};
    ep.subtasks.push_back(run_subtask(q));
  }
  return ep;
}

}  // namespace goalnav
