#include "goalnav/perception_oracles.hpp"

#include <algorithm>
#include <cmath>

namespace goalnav {

double OracleDetector::visibility_fraction(const Pose& pose,
                                           int object_index) const {
  const World& w = *world_;
  const WorldObject& obj = w.objects()[object_index];
  const double cs = w.cell_size();
  const Vec3 eye{pose.x, pose.y, ext_.sensor_height_m};
  const double half_hfov = intr_.hfov_rad / 2.0;

  int in_view = 0, visible = 0;
  // sample the vertical mid-height of every footprint boundary cell
  const double sample_z = std::clamp((obj.min_z + obj.max_z) / 2.0, 0.0,
                                     w.z_bins() * cs - cs / 2.0);
  for (const Cell& c : obj.footprint) {
    const double sx = (c.x + 0.5) * cs;
    const double sy = (c.y + 0.5) * cs;
    const double dx = sx - eye.x, dy = sy - eye.y;
    const double dist = std::hypot(dx, dy);
    if (dist < kDepthMinM || dist > kDepthMaxM) continue;
    const double bearing =
        std::fabs(normalize_angle(std::atan2(dx, dy) - pose.theta));
    if (bearing > half_hfov) continue;
    ++in_view;

    // march toward the sample; visible iff the first occupied voxel along
    // the ray belongs to the object
    const Vec3 dir{dx, dy, sample_z - eye.z};
    const int steps = static_cast<int>(std::ceil(dist / (cs * 0.5)));
    bool blocked = false;
    for (int s = 1; s <= steps; ++s) {
      const double t = static_cast<double>(s) / steps;
      const int vx = static_cast<int>(std::floor((eye.x + t * dir.x) / cs));
      const int vy = static_cast<int>(std::floor((eye.y + t * dir.y) / cs));
      const int vz = static_cast<int>(std::floor((eye.z + t * dir.z) / cs));
      if (!w.in_bounds(vx, vy, vz)) break;
      const int id = w.voxel(vx, vy, vz);
      if (id == kVoxelEmpty || id == kVoxelFloor) continue;
      if (id != object_index) blocked = true;
      break;
    }
    if (!blocked) ++visible;
  }
  if (in_view == 0) return 0.0;
  return static_cast<double>(visible) / in_view;
}

std::vector<Detection> OracleDetector::detect(const RgbImage& rgb,
                                              const GoalQuery& query) {
  std::vector<Detection> out;
  for (int id : world_->find_objects(query.text)) {
    // mask from the render's id buffer
    Detection d;
    d.mask.assign(rgb.object_ids.size(), 0);
    double x1 = 1e9, y1 = 1e9, x2 = -1e9, y2 = -1e9;
    std::size_t n = 0;
    for (int v = 0; v < rgb.height; ++v)
      for (int u = 0; u < rgb.width; ++u) {
        const std::size_t i = static_cast<std::size_t>(v) * rgb.width + u;
        if (rgb.object_ids[i] != id) continue;
        d.mask[i] = 1;
        ++n;
        x1 = std::min(x1, double(u));
        x2 = std::max(x2, double(u) + 1);
        y1 = std::min(y1, double(v));
        y2 = std::max(y2, double(v) + 1);
      }
    if (n == 0) continue;  // not in frame (or fully occluded)
    // confidence decoupled from pixel count: raycast visibility of the
    // object's footprint from the current pose
    const double c = visibility_fraction(rgb.pose, id);
    if (c <= 0.0) continue;
    d.x1 = x1; d.y1 = y1; d.x2 = x2; d.y2 = y2;
    d.confidence = c;
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) {
    return a.confidence > b.confidence;
  });
  return out;
}

const std::vector<DistanceField>& GeodesicOracleScorer::fields_for(
    const std::string& label) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(label);
  if (it != cache_.end()) return it->second;
  std::vector<DistanceField> fields;
  for (int id : world_->find_objects(label))
    fields.push_back(object_distance_field(*world_, id));
  return cache_.emplace(label, std::move(fields)).first->second;
}

FrontierScores GeodesicOracleScorer::score_frontiers(
    const RgbImage&, const GoalQuery& query,
    const std::vector<Frontier>& frontiers, const std::string&) {
  FrontierScores scores(frontiers.size(), 0.0);
  const std::vector<DistanceField>& fields = fields_for(query.text);
  if (fields.empty()) return FrontierScores(frontiers.size(), 0.5);

  for (std::size_t i = 0; i < frontiers.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const DistanceField& f : fields)
      best = std::min(best, double(f.arrival_at(frontiers[i].centroid)));
    scores[i] = std::isfinite(best) ? std::exp(-best / tau_m_) : 0.0;
  }
  return scores;
}

}  // namespace goalnav
