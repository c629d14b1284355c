#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "goalnav/frontier.hpp"
#include "goalnav/geometry.hpp"

namespace goalnav {

struct GoalQuery {
  std::string text;
  int query_id = 0;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;      // 3 bytes per pixel, row-major
  std::vector<int> object_ids;        // simulator id buffer, -1 = none
  Pose pose;                          // capture pose (simulator ground truth)
};

struct Detection {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  double confidence = 0.0;
  std::vector<std::uint8_t> mask;  // one byte per pixel of the source image
};

using FrontierScores = std::vector<double>;

constexpr double kTauDetDefault = 0.30;
constexpr int kNConfirmDefault = 2;
constexpr double kBlendWeightDefault = 0.35;
constexpr double kUniformFallbackScore = 0.5;

// Open-vocabulary detector contract. Implementations may throw
// DetectorUnavailable; callers treat the frame as a no-detection.
class Detector {
 public:
  virtual ~Detector() = default;
  // Detections sorted by confidence, descending.
  virtual std::vector<Detection> detect(const RgbImage& rgb,
                                        const GoalQuery& query) = 0;
};

struct DetectorUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Frontier scoring contract (spatial-reasoning role). Scores are in [0,1],
// one per frontier, not required to sum to 1. Backend failures degrade to
// the uniform fallback inside the implementation.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual FrontierScores score_frontiers(const RgbImage& rgb,
                                         const GoalQuery& query,
                                         const std::vector<Frontier>& frontiers,
                                         const std::string& history) = 0;
};

class UniformScorer final : public Scorer {
 public:
  FrontierScores score_frontiers(const RgbImage&, const GoalQuery&,
                                 const std::vector<Frontier>& frontiers,
                                 const std::string&) override {
    return FrontierScores(frontiers.size(), kUniformFallbackScore);
  }
};

// Multi-view confirmation counter; a miss (no detection above threshold)
// resets the consecutive-hit count.
struct ConfirmationState {
  int query_id = 0;
  int consecutive_hits = 0;
  Detection last_confirmed;
};

struct ConfirmResult {
  ConfirmationState state;
  bool confirmed = false;
};

ConfirmResult confirm(const ConfirmationState& state,
                      const std::vector<Detection>& detections,
                      double tau_det = kTauDetDefault,
                      int n_confirm = kNConfirmDefault);

// Eq. 6 blend: U_i = (1-w) * s_i + w * v_i.
std::vector<double> blend_utility(const FrontierScores& scores,
                                  const std::vector<double>& values, double w);

// Argmax with lowest-index tie-break.
std::size_t argmax_utility(const std::vector<double>& utilities);

}  // namespace goalnav
