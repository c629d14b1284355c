#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "goalnav/geometry.hpp"
#include "goalnav/grid.hpp"
#include "goalnav/perception.hpp"
#include "goalnav/planner.hpp"

namespace goalnav {

constexpr double kDepthMinM = 0.5;
constexpr double kDepthMaxM = 5.0;
constexpr double kSensorHeightM = 1.31;
constexpr double kHfovDefaultRad = 42.0 * 3.14159265358979323846 / 180.0;
constexpr double kAgentRadiusM = 0.10;

// Voxel ids: -1 empty, -2 wall, -3 floor, >= 0 object index.
constexpr int kVoxelEmpty = -1;
constexpr int kVoxelWall = -2;
constexpr int kVoxelFloor = -3;

struct WorldObject {
  std::string label;
  // world AABB, meters
  double min_x = 0, min_y = 0, min_z = 0;
  double max_x = 0, max_y = 0, max_z = 0;
  std::vector<Cell> footprint;  // occupied BEV cells
  // Mirror analog: the object shows up in RGB but depth rays pierce it and
  // return the surface behind.
  bool depth_transparent = false;
};

// Immutable voxel environment with a ground-truth object registry.
class World {
 public:
  World() = default;
  World(int side_x, int side_y, int z_bins, double cell_size);

  int side_x() const { return side_x_; }
  int side_y() const { return side_y_; }
  int z_bins() const { return z_bins_; }
  double cell_size() const { return cell_size_; }
  double extent_x() const { return side_x_ * cell_size_; }
  double extent_y() const { return side_y_ * cell_size_; }

  int voxel(int x, int y, int z) const { return voxels_[idx(x, y, z)]; }
  void set_voxel(int x, int y, int z, int id) { voxels_[idx(x, y, z)] = id; }
  bool in_bounds(int x, int y, int z) const {
    return x >= 0 && x < side_x_ && y >= 0 && y < side_y_ && z >= 0 &&
           z < z_bins_;
  }

  // Fills an axis-aligned box (meters) with the given voxel id and, for
  // objects, records the footprint.
  void add_box(double min_x, double min_y, double min_z, double max_x,
               double max_y, double max_z, int id);
  int add_object(const std::string& label, double min_x, double min_y,
                 double min_z, double max_x, double max_y, double max_z,
                 bool depth_transparent = false);
  void add_floor();

  const std::vector<WorldObject>& objects() const { return objects_; }
  const std::vector<Pose>& spawn_points() const { return spawns_; }
  std::vector<Pose>& spawn_points() { return spawns_; }

  // True BEV obstacle mask over the agent traversability band (floor
  // excluded). Rebuilt lazily after edits.
  const BoolGrid& bev_obstacle() const;

  // Objects matching a query label (exact, case-sensitive).
  std::vector<int> find_objects(const std::string& label) const;

 private:
  std::size_t idx(int x, int y, int z) const {
    return (static_cast<std::size_t>(y) * side_x_ + x) *
               static_cast<std::size_t>(z_bins_) + z;
  }

  int side_x_ = 0, side_y_ = 0, z_bins_ = 0;
  double cell_size_ = 0.05;
  std::vector<int> voxels_;
  std::vector<WorldObject> objects_;
  std::vector<Pose> spawns_;
  mutable BoolGrid bev_cache_;
  mutable bool bev_dirty_ = true;
};

struct Observation {
  RgbImage rgb;
  DepthImage depth;
  Pose pose;
};

// Per-pixel ray march through the voxel grid with the inverse pinhole model.
// Depth stores the camera-frame forward distance; returns outside
// [kDepthMinM, kDepthMaxM] are written as 0 (invalid).
Observation render(const World& world, const Pose& pose,
                   const CameraIntrinsics& intr, const CameraExtrinsics& ext);

struct StepResult {
  Pose pose;
  bool collided = false;
};

// Exact turns; MOVE_FORWARD translates up to 0.25 m along the heading,
// truncated at the first collision of the agent disk with the obstacle band.
StepResult step(const World& world, const Pose& pose, Action action);

// Geodesic distance (meters) over the true free-space grid from the pose to
// the nearest footprint-adjacent free cell of the object. +inf when
// disconnected.
double ground_truth_geodesic(const World& world, const Pose& from,
                             int object_index);

// Arrival field over true free space seeded at the object boundary; shared by
// the geodesic query and the oracle scorer.
DistanceField object_distance_field(const World& world, int object_index);

// Euclidean distance from a pose to the nearest footprint cell center.
double distance_to_footprint(const World& world, const Pose& pose,
                             int object_index);

// Deterministic label color for the synthetic RGB render.
void label_color(int object_id, std::uint8_t out[3]);

}  // namespace goalnav
