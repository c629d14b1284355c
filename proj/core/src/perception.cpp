#include "goalnav/perception.hpp"

#include <stdexcept>

namespace goalnav {

ConfirmResult confirm(const ConfirmationState& state,
                      const std::vector<Detection>& detections, double tau_det,
                      int n_confirm) {
  ConfirmResult r;
  r.state = state;

  const Detection* best = nullptr;
  for (const Detection& d : detections)
    if (!best || d.confidence > best->confidence) best = &d;

  // strict > per the detection threshold semantics
  if (best && best->confidence > tau_det) {
    r.state.consecutive_hits += 1;
    if (r.state.consecutive_hits >= n_confirm) {
      r.state.last_confirmed = *best;
      r.confirmed = true;
    }
  } else {
    r.state.consecutive_hits = 0;
  }
  return r;
}

std::vector<double> blend_utility(const FrontierScores& scores,
                                  const std::vector<double>& values, double w) {
  if (scores.size() != values.size())
    throw std::invalid_argument("blend_utility: length mismatch");
  std::vector<double> u(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    u[i] = (1.0 - w) * scores[i] + w * values[i];
  return u;
}

std::size_t argmax_utility(const std::vector<double>& utilities) {
  if (utilities.empty())
    throw std::invalid_argument("argmax_utility: empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < utilities.size(); ++i)
    if (utilities[i] > utilities[best]) best = i;
  return best;
}

}  // namespace goalnav
