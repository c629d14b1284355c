#include "goalnav/value_map.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace goalnav {

ConeMask build_cone_mask(const DepthImage& depth, const CameraIntrinsics& intr,
                         const CameraExtrinsics& ext, const Pose& pose,
                         int map_side, double cell_size, double origin_x,
                         double origin_y, double min_depth_m,
                         double max_depth_m) {
  ConeMask mask;
  mask.m = FloatGrid(map_side, map_side, 0.f);

  const PointCloud cam = backproject_depth(depth, intr, min_depth_m, max_depth_m);
  const PointCloud world = world_transform(to_geocentric(cam, ext), pose);

  BoolGrid support(map_side, map_side, 0);
  auto mark = [&](double wx, double wy) {
    const int cx = static_cast<int>(std::floor((wx - origin_x) / cell_size));
    const int cy = static_cast<int>(std::floor((wy - origin_y) / cell_size));
    if (support.in_bounds(cx, cy)) support.at(cx, cy) = 1;
  };

  // Fill the wedge between the agent and each observed surface point by
  // sampling along the viewing ray, so the cone covers traversed free space
  // and not only the hit cells. A pixel stride keeps this cheap: adjacent
  // columns are far denser than the BEV cell size even at max range, and the
  // along-ray sampling closes any radial gaps between strided rows.
  const int u_step = 2, v_step = 4;
  for (int v = 0; v < depth.height; v += v_step)
    for (int u = 0; u < depth.width; u += u_step) {
    const std::size_t i = static_cast<std::size_t>(v) * depth.width + u;
    if (!world.valid[i]) continue;
    const double wx = world.points[i].x, wy = world.points[i].y;
    const double len = std::hypot(wx - pose.x, wy - pose.y);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / cell_size)));
    for (int s = 0; s <= steps; ++s) {
      const double t = static_cast<double>(s) / steps;
      mark(pose.x + t * (wx - pose.x), pose.y + t * (wy - pose.y));
    }
  }

  // 4-neighbor distance to the complement, feathered over 2 cells. The BFS
  // only needs the support bounding box (plus a 1-cell complement ring);
  // everything outside is complement and stays 0.
  int x0 = map_side, y0 = map_side, x1 = -1, y1 = -1;
  for (int y = 0; y < map_side; ++y)
    for (int x = 0; x < map_side; ++x)
      if (support.at(x, y)) {
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
  if (x1 < 0) return mask;  // no valid returns anywhere
  x0 = std::max(0, x0 - 1);
  y0 = std::max(0, y0 - 1);
  x1 = std::min(map_side - 1, x1 + 1);
  y1 = std::min(map_side - 1, y1 + 1);

  const float inf = std::numeric_limits<float>::infinity();
  FloatGrid dist(map_side, map_side, inf);
  std::deque<Cell> queue;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (!support.at(x, y)) {
        dist.at(x, y) = 0.f;
        queue.push_back(Cell{x, y});
      }
  constexpr int dx[] = {1, -1, 0, 0};
  constexpr int dy[] = {0, 0, 1, -1};
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (int k = 0; k < 4; ++k) {
      const Cell n{c.x + dx[k], c.y + dy[k]};
      if (n.x < x0 || n.x > x1 || n.y < y0 || n.y > y1) continue;
      if (dist.at(n) > dist.at(c) + 1.f) {
        dist.at(n) = dist.at(c) + 1.f;
        queue.push_back(n);
      }
    }
  }
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (support.at(x, y))
        mask.m.at(x, y) = std::min(1.f, dist.at(x, y) / 3.f);
  return mask;
}

void bayes_update(ValueMap& vm, double confidence, const ConeMask& mask) {
  if (!(confidence >= 0.0 && confidence <= 1.0))
    throw std::invalid_argument("bayes_update: confidence outside [0,1]");
  if (mask.m.width() != vm.side())
    throw std::invalid_argument("bayes_update: mask geometry mismatch");

  constexpr double eps = 1e-6;
  for (std::size_t i = 0; i < mask.m.size(); ++i) {
    const double m = mask.m.data()[i];
    if (m <= 0.0) continue;
    const double sigma_obs2 = 1.0 - m;
    const double mu = vm.mu.data()[i];
    const double sigma2 = vm.sigma2.data()[i];
    const double denom = sigma2 + sigma_obs2;
    if (denom < eps) {
      // fully confident prior re-observed with full trust: take the observation
      vm.mu.data()[i] = static_cast<float>(confidence * m);
      vm.sigma2.data()[i] = 0.f;
      continue;
    }
    vm.mu.data()[i] =
        static_cast<float>((sigma_obs2 * mu + sigma2 * confidence * m) / denom);
    vm.sigma2.data()[i] = static_cast<float>(sigma2 * sigma_obs2 / denom);
  }
}

double ucb_score(const ValueMap& vm, const Frontier& frontier, double radius_m,
                 double beta) {
  if (radius_m <= 0.0) throw std::invalid_argument("ucb_score: radius <= 0");
  const int r = std::max(0, static_cast<int>(std::floor(radius_m / vm.cell_size)));
  std::vector<float> mus, vars;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) {
      if (double(dx) * dx + double(dy) * dy > double(r) * r) continue;
      const Cell c{frontier.centroid.x + dx, frontier.centroid.y + dy};
      if (!vm.mu.in_bounds(c)) continue;
      mus.push_back(vm.mu.at(c));
      vars.push_back(vm.sigma2.at(c));
    }
  double med_mu = kValuePriorMu, med_var = kValuePriorSigma2;
  if (!mus.empty()) {
    auto median = [](std::vector<float>& v) {
      const std::size_t mid = v.size() / 2;
      std::nth_element(v.begin(), v.begin() + mid, v.end());
      if (v.size() % 2 == 1) return static_cast<double>(v[mid]);
      const float hi = v[mid];
      std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
      return (static_cast<double>(v[mid - 1]) + hi) / 2.0;
    };
    med_mu = median(mus);
    med_var = median(vars);
  }
  return med_mu + beta * std::sqrt(std::max(0.0, med_var));
}

std::vector<double> normalize_values(const std::vector<double>& scores) {
  if (scores.empty()) return {};
  const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<double> out(scores.size());
  if (hi - lo <= 0.0) {
    std::fill(out.begin(), out.end(), 0.5);
    return out;
  }
  for (std::size_t i = 0; i < scores.size(); ++i)
    out[i] = (scores[i] - lo) / (hi - lo);
  return out;
}

ValueMap fuse_value_maps(const std::vector<const ValueMap*>& maps) {
  if (maps.empty()) throw std::invalid_argument("fuse_value_maps: empty input");
  ValueMap out = *maps.front();
  for (std::size_t k = 1; k < maps.size(); ++k) {
    const ValueMap& vm = *maps[k];
    if (vm.side() != out.side())
      throw std::invalid_argument("fuse_value_maps: geometry mismatch");
    for (std::size_t i = 0; i < out.mu.size(); ++i) {
      out.mu.data()[i] = std::max(out.mu.data()[i], vm.mu.data()[i]);
      out.sigma2.data()[i] = std::min(out.sigma2.data()[i], vm.sigma2.data()[i]);
    }
  }
  return out;
}

}  // namespace goalnav
