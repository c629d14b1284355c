#include "goalnav/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace goalnav {

double normalize_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta <= -std::numbers::pi) theta += two_pi;
  if (theta > std::numbers::pi) theta -= two_pi;
  return theta;
}

CameraIntrinsics compute_intrinsics(int sensor_w, int sensor_h, double hfov_rad,
                                    int proc_w, int proc_h) {
  if (sensor_w < 2 || sensor_h < 2 || proc_w < 2 || proc_h < 2)
    throw std::invalid_argument("compute_intrinsics: dimensions must be >= 2");
  if (!std::isfinite(hfov_rad) || hfov_rad <= 0.0 ||
      hfov_rad >= std::numbers::pi)
    throw std::invalid_argument("compute_intrinsics: hfov out of (0, pi)");

  const double f_s = sensor_w / (2.0 * std::tan(hfov_rad / 2.0));
  const double s_x = static_cast<double>(proc_w) / sensor_w;
  const double s_y = static_cast<double>(proc_h) / sensor_h;

  CameraIntrinsics intr;
  intr.sensor_width_px = sensor_w;
  intr.sensor_height_px = sensor_h;
  intr.hfov_rad = hfov_rad;
  intr.proc_width_px = proc_w;
  intr.proc_height_px = proc_h;
  intr.f_x = f_s * s_x;
  intr.f_z = f_s * s_y;
  intr.c_x = (proc_w - 1) / 2.0;
  intr.c_y = (proc_h - 1) / 2.0;
  return intr;
}

PointCloud backproject_depth(const DepthImage& depth,
                             const CameraIntrinsics& intr, double min_depth_m,
                             double max_depth_m) {
  if (depth.width != intr.proc_width_px || depth.height != intr.proc_height_px)
    throw std::invalid_argument(
        "backproject_depth: depth dimensions do not match intrinsics");

  PointCloud pc;
  pc.points.resize(static_cast<std::size_t>(depth.width) * depth.height);
  pc.valid.resize(pc.points.size(), 0);

  std::size_t i = 0;
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u, ++i) {
      const double d = depth.meters[i];
      if (!(d >= min_depth_m && d <= max_depth_m)) continue;  // 0 is invalid
      pc.points[i] = Vec3{(u - intr.c_x) * d / intr.f_x, d,
                          -(v - intr.c_y) * d / intr.f_z};
      pc.valid[i] = 1;
    }
  }
  return pc;
}

Vec3 rotate_pitch(const Vec3& p, double pitch_rad) {
  const double c = std::cos(pitch_rad);
  const double s = std::sin(pitch_rad);
  // Rotation about the right (x) axis; positive pitch tilts forward up.
  return Vec3{p.x, c * p.y - s * p.z, s * p.y + c * p.z};
}

PointCloud to_geocentric(const PointCloud& pc, const CameraExtrinsics& ext) {
  PointCloud out = pc;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (!out.valid[i]) continue;
    Vec3 p = rotate_pitch(out.points[i], ext.elevation_rad);
    p.z += ext.sensor_height_m;
    out.points[i] = p;
  }
  return out;
}

PointCloud world_transform(const PointCloud& pc, const Pose& pose) {
  PointCloud out = pc;
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (!out.valid[i]) continue;
    const Vec3& p = out.points[i];
    // right axis = (cos, -sin), forward axis = (sin, cos)
    out.points[i] = Vec3{p.x * c + p.y * s + pose.x,
                         -p.x * s + p.y * c + pose.y, p.z};
  }
  return out;
}

}  // namespace goalnav
