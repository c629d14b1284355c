#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "goalnav/perception.hpp"
#include "goalnav/simulator.hpp"

namespace goalnav {

// Ground-truth detector: the mask comes from the render's object-id buffer
// and the confidence is the raycast visibility fraction of the object's
// surface samples from the observing pose. Occluded objects score 0 and are
// not reported.
class OracleDetector final : public Detector {
 public:
  OracleDetector(const World& world, const CameraIntrinsics& intr,
                 const CameraExtrinsics& ext)
      : world_(&world), intr_(intr), ext_(ext) {}

  std::vector<Detection> detect(const RgbImage& rgb,
                                const GoalQuery& query) override;

  // Fraction of the object's boundary voxel samples whose first raycast hit
  // from the pose is the object itself, over samples within FOV and range.
  double visibility_fraction(const Pose& pose, int object_index) const;

 private:
  const World* world_;
  CameraIntrinsics intr_;
  CameraExtrinsics ext_;
};

// Frontier scorer with simulator privilege: score = exp(-d_geo / tau) against
// the nearest instance of the queried object.
class GeodesicOracleScorer final : public Scorer {
 public:
  explicit GeodesicOracleScorer(const World& world, double tau_m = 5.0)
      : world_(&world), tau_m_(tau_m) {}

  FrontierScores score_frontiers(const RgbImage& rgb, const GoalQuery& query,
                                 const std::vector<Frontier>& frontiers,
                                 const std::string& history) override;

 private:
  const std::vector<DistanceField>& fields_for(const std::string& label);

  const World* world_;
  double tau_m_;
  std::mutex mutex_;
  std::map<std::string, std::vector<DistanceField>> cache_;
};

// Inverted oracle for the robustness ablation.
class AdversarialScorer final : public Scorer {
 public:
  explicit AdversarialScorer(const World& world, double tau_m = 5.0)
      : oracle_(world, tau_m) {}

  FrontierScores score_frontiers(const RgbImage& rgb, const GoalQuery& query,
                                 const std::vector<Frontier>& frontiers,
                                 const std::string& history) override {
    FrontierScores s = oracle_.score_frontiers(rgb, query, frontiers, history);
    for (double& v : s) v = 1.0 - v;
    return s;
  }

 private:
  GeodesicOracleScorer oracle_;
};

// Always-failing implementations for graceful-degradation tests.
class FailingDetector final : public Detector {
 public:
  std::vector<Detection> detect(const RgbImage&, const GoalQuery&) override {
    throw DetectorUnavailable("detector backend down");
  }
};

}  // namespace goalnav
