#include "goalnav/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "goalnav/mapping.hpp"

namespace goalnav {

World::World(int side_x, int side_y, int z_bins, double cell_size)
    : side_x_(side_x), side_y_(side_y), z_bins_(z_bins), cell_size_(cell_size) {
  if (side_x <= 0 || side_y <= 0 || z_bins <= 0 || cell_size <= 0.0)
    throw std::invalid_argument("World: bad dimensions");
  voxels_.assign(static_cast<std::size_t>(side_x) * side_y * z_bins,
                 kVoxelEmpty);
}

void World::add_box(double min_x, double min_y, double min_z, double max_x,
                    double max_y, double max_z, int id) {
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x / cell_size_)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y / cell_size_)));
  const int z0 = std::max(0, static_cast<int>(std::floor(min_z / cell_size_)));
  const int x1 = std::min(side_x_ - 1,
                          static_cast<int>(std::ceil(max_x / cell_size_)) - 1);
  const int y1 = std::min(side_y_ - 1,
                          static_cast<int>(std::ceil(max_y / cell_size_)) - 1);
  const int z1 = std::min(z_bins_ - 1,
                          static_cast<int>(std::ceil(max_z / cell_size_)) - 1);
  for (int z = z0; z <= z1; ++z)
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) voxels_[idx(x, y, z)] = id;
  bev_dirty_ = true;
}

int World::add_object(const std::string& label, double min_x, double min_y,
                      double min_z, double max_x, double max_y, double max_z,
                      bool depth_transparent) {
  const int id = static_cast<int>(objects_.size());
  add_box(min_x, min_y, min_z, max_x, max_y, max_z, id);
  WorldObject obj;
  obj.label = label;
  obj.min_x = min_x; obj.min_y = min_y; obj.min_z = min_z;
  obj.max_x = max_x; obj.max_y = max_y; obj.max_z = max_z;
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x / cell_size_)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y / cell_size_)));
  const int x1 = std::min(side_x_ - 1,
                          static_cast<int>(std::ceil(max_x / cell_size_)) - 1);
  const int y1 = std::min(side_y_ - 1,
                          static_cast<int>(std::ceil(max_y / cell_size_)) - 1);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) obj.footprint.push_back(Cell{x, y});
  obj.depth_transparent = depth_transparent;
  objects_.push_back(std::move(obj));
  return id;
}

void World::add_floor() {
  for (int y = 0; y < side_y_; ++y)
    for (int x = 0; x < side_x_; ++x)
      if (voxels_[idx(x, y, 0)] == kVoxelEmpty)
        voxels_[idx(x, y, 0)] = kVoxelFloor;
  bev_dirty_ = true;
}

const BoolGrid& World::bev_obstacle() const {
  if (bev_dirty_) {
    MapConfig cfg;
    bev_cache_ = BoolGrid(side_x_, side_y_, 0);
    const int z_lo = static_cast<int>(std::floor(cfg.z_obstacle_min / cell_size_));
    const int z_hi = std::min(
        z_bins_ - 1, static_cast<int>(std::floor(cfg.z_obstacle_max / cell_size_)));
    for (int y = 0; y < side_y_; ++y)
      for (int x = 0; x < side_x_; ++x)
        for (int z = z_lo; z <= z_hi; ++z) {
          const int id = voxels_[idx(x, y, z)];
          if (id != kVoxelEmpty && id != kVoxelFloor) {
            bev_cache_.at(x, y) = 1;
            break;
          }
        }
    bev_dirty_ = false;
  }
  return bev_cache_;
}

std::vector<int> World::find_objects(const std::string& label) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i].label == label) out.push_back(static_cast<int>(i));
  return out;
}

void label_color(int object_id, std::uint8_t out[3]) {
  if (object_id == kVoxelFloor) {
    out[0] = out[1] = out[2] = 60;
    return;
  }
  if (object_id == kVoxelWall) {
    out[0] = out[1] = out[2] = 200;
    return;
  }
  if (object_id < 0) {
    out[0] = out[1] = out[2] = 0;
    return;
  }
  std::uint32_t h = static_cast<std::uint32_t>(object_id) * 2654435761u;
  out[0] = static_cast<std::uint8_t>(64 + (h & 0x7F));
  out[1] = static_cast<std::uint8_t>(64 + ((h >> 8) & 0x7F));
  out[2] = static_cast<std::uint8_t>(64 + ((h >> 16) & 0x7F));
}

namespace {

// Amanatides & Woo voxel traversal. `dir` need not be normalized; the
// parameter t is in the same units as `dir` scaling, here chosen so that t
// equals the camera-frame forward depth.
// Returns the id seen by RGB in `id_rgb` (first hit including transparent
// objects); the return value is the first depth-opaque hit.
int march_ray(const World& w, const Vec3& origin, const Vec3& dir,
              double t_max, double& t_hit, int& id_rgb) {
  const double cs = w.cell_size();
  int x = static_cast<int>(std::floor(origin.x / cs));
  int y = static_cast<int>(std::floor(origin.y / cs));
  int z = static_cast<int>(std::floor(origin.z / cs));

  const int step_x = dir.x > 0 ? 1 : (dir.x < 0 ? -1 : 0);
  const int step_y = dir.y > 0 ? 1 : (dir.y < 0 ? -1 : 0);
  const int step_z = dir.z > 0 ? 1 : (dir.z < 0 ? -1 : 0);

  const double inf = std::numeric_limits<double>::infinity();
  auto boundary_t = [cs](double o, double d, int c, int s) {
    if (s == 0) return std::numeric_limits<double>::infinity();
    const double edge = (s > 0 ? (c + 1) * cs : c * cs);
    return (edge - o) / d;
  };
  double t_max_x = boundary_t(origin.x, dir.x, x, step_x);
  double t_max_y = boundary_t(origin.y, dir.y, y, step_y);
  double t_max_z = boundary_t(origin.z, dir.z, z, step_z);
  const double t_delta_x = step_x ? cs / std::fabs(dir.x) : inf;
  const double t_delta_y = step_y ? cs / std::fabs(dir.y) : inf;
  const double t_delta_z = step_z ? cs / std::fabs(dir.z) : inf;

  double t = 0.0;
  while (t <= t_max) {
    if (w.in_bounds(x, y, z)) {
      const int id = w.voxel(x, y, z);
      if (id != kVoxelEmpty) {
        const bool transparent =
            id >= 0 && w.objects()[id].depth_transparent;
        if (id_rgb == kVoxelEmpty) id_rgb = id;
        if (!transparent) {
          t_hit = t;
          return id;
        }
      }
    } else if (t > 0.0) {
      return kVoxelEmpty;  // left the grid
    }
    if (t_max_x <= t_max_y && t_max_x <= t_max_z) {
      t = t_max_x;
      t_max_x += t_delta_x;
      x += step_x;
    } else if (t_max_y <= t_max_z) {
      t = t_max_y;
      t_max_y += t_delta_y;
      y += step_y;
    } else {
      t = t_max_z;
      t_max_z += t_delta_z;
      z += step_z;
    }
  }
  return kVoxelEmpty;
}

}  // namespace

Observation render(const World& world, const Pose& pose,
                   const CameraIntrinsics& intr, const CameraExtrinsics& ext) {
  Observation obs;
  obs.pose = pose;
  const int W = intr.proc_width_px, H = intr.proc_height_px;
  obs.depth.width = W;
  obs.depth.height = H;
  obs.depth.meters.assign(static_cast<std::size_t>(W) * H, 0.f);
  obs.rgb.width = W;
  obs.rgb.height = H;
  obs.rgb.rgb.assign(static_cast<std::size_t>(W) * H * 3, 0);
  obs.rgb.object_ids.assign(static_cast<std::size_t>(W) * H, kVoxelEmpty);
  obs.rgb.pose = pose;

  const Vec3 origin{pose.x, pose.y, ext.sensor_height_m};
  const double c = std::cos(pose.theta), s = std::sin(pose.theta);

  std::size_t i = 0;
  for (int v = 0; v < H; ++v) {
    for (int u = 0; u < W; ++u, ++i) {
      // inverse of the back-projection: forward component fixed at 1 so the
      // ray parameter equals the stored depth
      Vec3 d_cam{(u - intr.c_x) / intr.f_x, 1.0, -(v - intr.c_y) / intr.f_z};
      Vec3 d_geo = rotate_pitch(d_cam, ext.elevation_rad);
      Vec3 d_world{d_geo.x * c + d_geo.y * s, -d_geo.x * s + d_geo.y * c,
                   d_geo.z};

      double t_hit = 0.0;
      int id_rgb = kVoxelEmpty;
      const int id =
          march_ray(world, origin, d_world, kDepthMaxM + 1.0, t_hit, id_rgb);
      if (id == kVoxelEmpty) continue;
      if (t_hit < kDepthMinM || t_hit > kDepthMaxM) continue;  // invalid: 0
      obs.depth.meters[i] = static_cast<float>(t_hit);
      obs.rgb.object_ids[i] = id_rgb;
      label_color(id_rgb, &obs.rgb.rgb[i * 3]);
    }
  }
  return obs;
}

namespace {

bool disk_collides(const World& w, double cx, double cy) {
  const BoolGrid& obs = w.bev_obstacle();
  const double cs = w.cell_size();
  const int r = static_cast<int>(std::ceil(kAgentRadiusM / cs));
  const int x0 = static_cast<int>(std::floor(cx / cs));
  const int y0 = static_cast<int>(std::floor(cy / cs));
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) {
      const int x = x0 + dx, y = y0 + dy;
      if (!obs.in_bounds(x, y)) return true;  // world edge is solid
      if (!obs.at(x, y)) continue;
      // nearest point of the cell to the disk center
      const double nx = std::clamp(cx, x * cs, (x + 1) * cs);
      const double ny = std::clamp(cy, y * cs, (y + 1) * cs);
      if (std::hypot(nx - cx, ny - cy) <= kAgentRadiusM) return true;
    }
  return false;
}

}  // namespace

StepResult step(const World& world, const Pose& pose, Action action) {
  StepResult r;
  r.pose = pose;
  switch (action) {
    case Action::kStop:
      return r;
    case Action::kTurnLeft:
      r.pose.theta = normalize_angle(pose.theta - kTurnCoarseRad);
      return r;
    case Action::kTurnRight:
      r.pose.theta = normalize_angle(pose.theta + kTurnCoarseRad);
      return r;
    case Action::kTurnLeftS:
      r.pose.theta = normalize_angle(pose.theta - kTurnFineRad);
      return r;
    case Action::kTurnRightS:
      r.pose.theta = normalize_angle(pose.theta + kTurnFineRad);
      return r;
    case Action::kMoveForward:
      break;
  }

  const double fx = std::sin(pose.theta), fy = std::cos(pose.theta);
  constexpr double kSampleM = 0.01;
  double moved = 0.0;
  double ok = 0.0;
  while (moved + kSampleM <= kForwardStepM + 1e-12) {
    moved += kSampleM;
    if (disk_collides(world, pose.x + fx * moved, pose.y + fy * moved)) {
      r.collided = true;
      break;
    }
    ok = moved;
  }
  r.pose.x = pose.x + fx * ok;
  r.pose.y = pose.y + fy * ok;
  return r;
}

DistanceField object_distance_field(const World& world, int object_index) {
  if (object_index < 0 ||
      object_index >= static_cast<int>(world.objects().size()))
    throw std::invalid_argument("object_distance_field: bad object index");

  const BoolGrid& obs = world.bev_obstacle();
  BoolGrid free(obs.width(), obs.height(), 0);
  for (int y = 0; y < obs.height(); ++y)
    for (int x = 0; x < obs.width(); ++x) free.at(x, y) = obs.at(x, y) ? 0 : 1;

  // sources: free cells adjacent (8-neighborhood) to the footprint
  std::vector<Cell> sources;
  BoolGrid marked(obs.width(), obs.height(), 0);
  for (const Cell& fc : world.objects()[object_index].footprint)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const Cell c{fc.x + dx, fc.y + dy};
        if (free.in_bounds(c) && free.at(c) && !marked.at(c)) {
          marked.at(c) = 1;
          sources.push_back(c);
        }
      }
  if (sources.empty()) {
    DistanceField inf_field(obs.width(), world.cell_size());
    return inf_field;
  }
  return fmm_solve(free, sources, world.cell_size());
}

double ground_truth_geodesic(const World& world, const Pose& from,
                             int object_index) {
  const DistanceField field = object_distance_field(world, object_index);
  const double cs = world.cell_size();
  const Cell c{static_cast<int>(std::floor(from.x / cs)),
               static_cast<int>(std::floor(from.y / cs))};
  return field.arrival_at(c);
}

double distance_to_footprint(const World& world, const Pose& pose,
                             int object_index) {
  const WorldObject& obj = world.objects()[object_index];
  const double cs = world.cell_size();
  double best = std::numeric_limits<double>::infinity();
  for (const Cell& c : obj.footprint) {
    const double wx = (c.x + 0.5) * cs, wy = (c.y + 0.5) * cs;
    best = std::min(best, std::hypot(wx - pose.x, wy - pose.y));
  }
  return best;
}

}  // namespace goalnav
