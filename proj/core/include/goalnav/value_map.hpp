#pragma once

#include <vector>

#include "goalnav/frontier.hpp"
#include "goalnav/geometry.hpp"
#include "goalnav/grid.hpp"
#include "goalnav/mapping.hpp"

namespace goalnav {

constexpr double kValuePriorMu = 0.5;
constexpr double kValuePriorSigma2 = 0.5;
constexpr double kUcbBetaDefault = 1.7;
constexpr double kUcbRadiusDefaultM = 0.5;

// Top-down belief/variance pair fused from per-frame confidences.
struct ValueMap {
  FloatGrid mu;
  FloatGrid sigma2;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cell_size = 0.05;

  ValueMap() = default;
  ValueMap(int side, double cell_size_m, double ox = 0.0, double oy = 0.0)
      : mu(side, side, static_cast<float>(kValuePriorMu)),
        sigma2(side, side, static_cast<float>(kValuePriorSigma2)),
        origin_x(ox), origin_y(oy), cell_size(cell_size_m) {}

  int side() const { return mu.width(); }

  friend bool operator==(const ValueMap&, const ValueMap&) = default;
};

// Visible-cone weights in [0, 1]; support comes from the BEV footprint of
// valid-depth pixels and tapers to 0 over a 2-cell feather at the edge.
struct ConeMask {
  FloatGrid m;
};

ConeMask build_cone_mask(const DepthImage& depth, const CameraIntrinsics& intr,
                         const CameraExtrinsics& ext, const Pose& pose,
                         int map_side, double cell_size, double origin_x,
                         double origin_y, double min_depth_m,
                         double max_depth_m);

// Per-cell conjugate update with observation variance 1 - m. Cells with
// m = 0 are untouched.
void bayes_update(ValueMap& vm, double confidence, const ConeMask& mask);

// Median belief + beta * sqrt(median variance) over a disk around the
// frontier centroid. Falls back to the prior when the disk has no in-bounds
// cells.
double ucb_score(const ValueMap& vm, const Frontier& frontier,
                 double radius_m = kUcbRadiusDefaultM,
                 double beta = kUcbBetaDefault);

// Min-max normalization; a degenerate (all-equal) range maps to all 0.5.
std::vector<double> normalize_values(const std::vector<double>& scores);

// Optional cross-agent sharing: element-wise max on mu, min on sigma2.
ValueMap fuse_value_maps(const std::vector<const ValueMap*>& maps);

}  // namespace goalnav
