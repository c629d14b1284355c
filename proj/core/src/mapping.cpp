#include "goalnav/mapping.hpp"

#include <cmath>
#include <stdexcept>

namespace goalnav {

VoxelGrid::VoxelGrid(int side, int z_bins, int channels, double cell_size_m,
                     double origin_x_m, double origin_y_m)
    : side_(side), z_bins_(z_bins), channels_(channels), cell_size_(cell_size_m),
      origin_x_(origin_x_m), origin_y_(origin_y_m) {
  if (side <= 0 || z_bins <= 0 || channels <= 0)
    throw std::invalid_argument("VoxelGrid: non-positive dims");
  if (cell_size_m <= 0.0)
    throw std::invalid_argument("VoxelGrid: non-positive cell size");
  data_.assign(static_cast<std::size_t>(side) * side * z_bins * channels, 0.f);
}

Cell VoxelGrid::world_to_cell(double wx, double wy) const {
  return Cell{static_cast<int>(std::floor((wx - origin_x_) / cell_size_)),
              static_cast<int>(std::floor((wy - origin_y_) / cell_size_))};
}

int VoxelGrid::height_to_bin(double wz) const {
  return static_cast<int>(std::floor(wz / cell_size_));
}

void VoxelGrid::splat(const PointCloud& pc,
                      const std::vector<int>& channel_labels) {
  for (std::size_t i = 0; i < pc.points.size(); ++i) {
    if (!pc.valid[i]) continue;
    const Vec3& p = pc.points[i];
    const Cell c = world_to_cell(p.x, p.y);
    const int z = height_to_bin(p.z);
    const int ch = channel_labels.empty() ? 0 : channel_labels[i];
    if (c.x < 0 || c.x >= side_ || c.y < 0 || c.y >= side_ || z < 0 ||
        z >= z_bins_ || ch < 0 || ch >= channels_) {
      ++dropped_;
      continue;
    }
    data_[idx(c.x, c.y, z, 0)] += 1.f;
    if (ch != 0) data_[idx(c.x, c.y, z, ch)] += 1.f;
  }
}

void VoxelGrid::splat(const PointCloud& pc, int channel) {
  std::vector<int> labels(pc.points.size(), channel);
  splat(pc, labels);
}

BoolGrid slice_obstacles(const VoxelGrid& grid, double z_min_m, double z_max_m,
                         double tau_obs) {
  if (!(z_min_m < z_max_m))
    throw std::invalid_argument("slice_obstacles: z_min >= z_max");
  const double extent = grid.z_bins() * grid.cell_size();
  if (z_min_m < 0.0 || z_max_m > extent)
    throw std::invalid_argument("slice_obstacles: band outside grid extent");

  const int b_lo = std::max(0, grid.height_to_bin(z_min_m));
  const int b_hi = std::min(grid.z_bins() - 1, grid.height_to_bin(z_max_m));

  BoolGrid out(grid.side(), grid.side(), 0);
  for (int y = 0; y < grid.side(); ++y)
    for (int x = 0; x < grid.side(); ++x) {
      double sum = 0.0;
      for (int z = b_lo; z <= b_hi; ++z) sum += grid.count(x, y, z, 0);
      out.at(x, y) = sum > tau_obs ? 1 : 0;
    }
  return out;
}

BoolGrid slice_explored(const VoxelGrid& grid) {
  BoolGrid out(grid.side(), grid.side(), 0);
  for (int y = 0; y < grid.side(); ++y)
    for (int x = 0; x < grid.side(); ++x) {
      double sum = 0.0;
      for (int z = 0; z < grid.z_bins(); ++z) sum += grid.count(x, y, z, 0);
      out.at(x, y) = sum > 0.0 ? 1 : 0;
    }
  return out;
}

SemanticBevMap::SemanticBevMap(const MapConfig& cfg)
    : obstacle(cfg.side, cfg.side, 0), explored(cfg.side, cfg.side, 0),
      origin_x(cfg.origin_x), origin_y(cfg.origin_y), cell_size(cfg.cell_size) {
  semantic.assign(cfg.semantic_channels, FloatGrid(cfg.side, cfg.side, 0.f));
}

Cell SemanticBevMap::world_to_cell(double wx, double wy) const {
  return Cell{static_cast<int>(std::floor((wx - origin_x) / cell_size)),
              static_cast<int>(std::floor((wy - origin_y) / cell_size))};
}

void SemanticBevMap::cell_to_world(Cell c, double& wx, double& wy) const {
  wx = origin_x + (c.x + 0.5) * cell_size;
  wy = origin_y + (c.y + 0.5) * cell_size;
}

void SemanticBevMap::refresh_from(const VoxelGrid& grid, const MapConfig& cfg) {
  obstacle = slice_obstacles(grid, cfg.z_obstacle_min, cfg.z_obstacle_max,
                             cfg.tau_obs);
  explored = slice_explored(grid);
  // obstacle cells are by construction explored (any count in the band also
  // counts toward the full-height sum)
}

GoalProjectResult project_goal_mask(const std::vector<std::uint8_t>& mask,
                                    const DepthImage& depth,
                                    const CameraIntrinsics& intr,
                                    const CameraExtrinsics& ext,
                                    const Pose& pose, SemanticBevMap& map,
                                    int goal_channel, double min_depth_m,
                                    double max_depth_m) {
  GoalProjectResult result;
  if (mask.size() != depth.meters.size())
    throw std::invalid_argument("project_goal_mask: mask/depth size mismatch");
  bool any_masked = false;
  for (auto m : mask)
    if (m) { any_masked = true; break; }
  if (!any_masked) {
    result.error = GoalProjectError::kEmptyMask;
    return result;
  }

  PointCloud cam = backproject_depth(depth, intr, min_depth_m, max_depth_m);
  for (std::size_t i = 0; i < cam.valid.size(); ++i)
    if (!mask[i]) cam.valid[i] = 0;

  PointCloud world = world_transform(to_geocentric(cam, ext), pose);

  std::vector<Cell> support;
  Grid2D<std::uint8_t> seen(map.side(), map.side(), 0);
  double sum_x = 0.0, sum_y = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < world.points.size(); ++i) {
    if (!world.valid[i]) continue;
    const Cell c = map.world_to_cell(world.points[i].x, world.points[i].y);
    if (!map.obstacle.in_bounds(c)) continue;
    sum_x += c.x;
    sum_y += c.y;
    ++n;
    if (!seen.at(c)) {
      seen.at(c) = 1;
      support.push_back(c);
    }
  }
  if (n == 0) {
    result.error = GoalProjectError::kNoValidDepth;
    return result;
  }

  BevGoal goal;
  goal.centroid = Cell{static_cast<int>(std::lround(sum_x / n)),
                       static_cast<int>(std::lround(sum_y / n))};
  goal.support_cells = support;
  goal.source = BevGoalSource::kDetector;

  if (goal_channel >= 0 &&
      goal_channel < static_cast<int>(map.semantic.size())) {
    for (const Cell& c : support) map.semantic[goal_channel].at(c) += 1.f;
  }
  result.goal = std::move(goal);
  return result;
}

}  // namespace goalnav
