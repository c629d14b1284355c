#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "goalnav/geometry.hpp"
#include "goalnav/grid.hpp"

namespace goalnav {

// Count accumulator over side x side x z_bins voxels with `channels` semantic
// channels. Channel 0 is occupancy; every splatted point increments channel 0
// in addition to its own channel.
class VoxelGrid {
 public:
  VoxelGrid() = default;
  VoxelGrid(int side, int z_bins, int channels, double cell_size_m,
            double origin_x_m = 0.0, double origin_y_m = 0.0);

  int side() const { return side_; }
  int z_bins() const { return z_bins_; }
  int channels() const { return channels_; }
  double cell_size() const { return cell_size_; }
  double origin_x() const { return origin_x_; }
  double origin_y() const { return origin_y_; }
  std::uint64_t dropped_points() const { return dropped_; }

  float count(int x, int y, int z, int c) const { return data_[idx(x, y, z, c)]; }
  float& count(int x, int y, int z, int c) { return data_[idx(x, y, z, c)]; }

  Cell world_to_cell(double wx, double wy) const;
  int height_to_bin(double wz) const;

  void splat(const PointCloud& pc, const std::vector<int>& channel_labels);
  void splat(const PointCloud& pc, int channel = 0);

  friend bool operator==(const VoxelGrid&, const VoxelGrid&) = default;

 private:
  std::size_t idx(int x, int y, int z, int c) const {
    return ((static_cast<std::size_t>(y) * side_ + x) * z_bins_ + z) *
               channels_ + c;
  }

  int side_ = 0;
  int z_bins_ = 0;
  int channels_ = 0;
  double cell_size_ = 0.05;
  double origin_x_ = 0.0;
  double origin_y_ = 0.0;
  std::uint64_t dropped_ = 0;
  std::vector<float> data_;
};

// Eq. 5 style height-band slice: obstacle iff the occupancy count summed over
// z in [z_min, z_max] exceeds tau_obs.
BoolGrid slice_obstacles(const VoxelGrid& grid, double z_min_m, double z_max_m,
                         double tau_obs);

// Explored iff any occupancy count over the full height extent.
BoolGrid slice_explored(const VoxelGrid& grid);

struct BevGoalSource {
  enum Kind { kDetector, kFrontier };
};

struct BevGoal {
  Cell centroid;
  std::vector<Cell> support_cells;
  BevGoalSource::Kind source = BevGoalSource::kDetector;
};

struct MapConfig {
  int side = 240;          // S cells
  double cell_size = 0.05;  // meters
  double origin_x = 0.0;
  double origin_y = 0.0;
  int z_bins = 40;          // 5 cm bins, 0..2.0 m
  int semantic_channels = 2;  // occupancy + one goal channel
  double z_obstacle_min = 0.25;
  double z_obstacle_max = 1.81;  // h_s + 0.50
  double tau_obs = 0.5;
};

// Per-agent BEV map: obstacle/explored booleans plus non-negative semantic
// channels, all derived from one voxel accumulator.
struct SemanticBevMap {
  BoolGrid obstacle;
  BoolGrid explored;
  std::vector<FloatGrid> semantic;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cell_size = 0.05;

  SemanticBevMap() = default;
  explicit SemanticBevMap(const MapConfig& cfg);

  int side() const { return obstacle.width(); }
  Cell world_to_cell(double wx, double wy) const;
  void cell_to_world(Cell c, double& wx, double& wy) const;

  // Recomputes obstacle/explored from the voxel accumulator. Keeps semantic
  // channels untouched.
  void refresh_from(const VoxelGrid& grid, const MapConfig& cfg);

  friend bool operator==(const SemanticBevMap&, const SemanticBevMap&) = default;
};

enum class GoalProjectError { kEmptyMask, kNoValidDepth };

struct GoalProjectResult {
  std::optional<BevGoal> goal;
  GoalProjectError error = GoalProjectError::kNoValidDepth;

  explicit operator bool() const { return goal.has_value(); }
};

// GoalProjector: back-projects a detection pixel mask through calibrated
// depth, registers it in the world frame and bins it to BEV cells. The
// support is also written into the map's goal semantic channel.
GoalProjectResult project_goal_mask(const std::vector<std::uint8_t>& mask,
                                    const DepthImage& depth,
                                    const CameraIntrinsics& intr,
                                    const CameraExtrinsics& ext,
                                    const Pose& pose, SemanticBevMap& map,
                                    int goal_channel, double min_depth_m,
                                    double max_depth_m);

}  // namespace goalnav
