#pragma once

#include <cstdint>
#include <vector>

namespace goalnav {

// Heading convention used throughout: theta = 0 faces map +y, theta grows
// toward +x (compass style). Forward unit vector is (sin(theta), cos(theta)),
// so the STG bearing is literally atan2(dx, dy).
double normalize_angle(double theta);

struct Vec3 {
  double x = 0.0;  // right
  double y = 0.0;  // forward
  double z = 0.0;  // up

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // radians, normalized to (-pi, pi]
};

// Dual-focal pinhole model after rescale from sensor to processing
// resolution. f_x and f_z differ whenever the aspect ratio changes
// (portrait sensors).
struct CameraIntrinsics {
  int sensor_width_px = 0;
  int sensor_height_px = 0;
  double hfov_rad = 0.0;
  int proc_width_px = 0;
  int proc_height_px = 0;
  double f_x = 0.0;
  double f_z = 0.0;
  double c_x = 0.0;
  double c_y = 0.0;
};

struct CameraExtrinsics {
  double elevation_rad = 0.0;  // pitch about the right axis, nose-down negative
  double sensor_height_m = 0.0;
};

struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<float> meters;  // row-major, 0 = no return

  float at(int u, int v) const {
    return meters[static_cast<std::size_t>(v) * width + u];
  }
  float& at(int u, int v) {
    return meters[static_cast<std::size_t>(v) * width + u];
  }
};

// One point per source pixel; invalid pixels keep a placeholder entry so
// pixel masks stay aligned with the cloud.
struct PointCloud {
  std::vector<Vec3> points;
  std::vector<std::uint8_t> valid;

  std::size_t size() const { return points.size(); }
};

CameraIntrinsics compute_intrinsics(int sensor_w, int sensor_h, double hfov_rad,
                                    int proc_w, int proc_h);

// Camera-frame back-projection. Output points are (right, forward, up); the
// image v axis grows downward, so the up component is the negated third
// component of the pinhole ray.
PointCloud backproject_depth(const DepthImage& depth,
                             const CameraIntrinsics& intr, double min_depth_m,
                             double max_depth_m);

// Pitch rotation about the right axis followed by translation to sensor
// height. Output z is height above the floor.
PointCloud to_geocentric(const PointCloud& pc, const CameraExtrinsics& ext);

// Registers a geocentric agent-frame cloud into the shared map frame.
PointCloud world_transform(const PointCloud& pc, const Pose& pose);

Vec3 rotate_pitch(const Vec3& p, double pitch_rad);

}  // namespace goalnav
