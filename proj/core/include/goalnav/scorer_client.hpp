#pragma once

#include <chrono>
#include <stdexcept>
#include <string>

#include "goalnav/perception.hpp"

namespace goalnav {

// Wire format (newline-delimited JSON over a stream socket, one line per
// message):
//
//   request:  {"type":"score_request","query":"<text>","history":"<opaque>",
//              "frontiers":[{"x":<m>,"y":<m>},...],"image_b64":"<optional>"}
//   reply:    {"scores":[s_0, ..., s_{K-1}]}
//
// The reply must carry exactly one score per requested frontier.
constexpr const char* kScorerEndpointEnv = "GOALNAV_SCORER_ENDPOINT";
constexpr std::chrono::milliseconds kScorerTimeoutDefault{2000};

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string build_score_request(const GoalQuery& query,
                                const std::vector<Frontier>& frontiers,
                                double cell_size, double origin_x,
                                double origin_y, const std::string& history,
                                const std::string& image_b64 = "");

// Throws ProtocolError on malformed input or a score-count mismatch.
FrontierScores parse_score_reply(const std::string& line,
                                 std::size_t expected_count);

// TCP client for an external frontier-scoring server. One connection per
// request, one in-flight request at a time. Timeouts and protocol errors
// degrade to the uniform fallback; the episode never aborts.
class ExternalScorer final : public Scorer {
 public:
  // endpoint "host:port"; empty reads kScorerEndpointEnv
  explicit ExternalScorer(std::string endpoint = "",
                          std::chrono::milliseconds timeout =
                              kScorerTimeoutDefault,
                          double cell_size = 0.05, double origin_x = 0.0,
                          double origin_y = 0.0);

  FrontierScores score_frontiers(const RgbImage& rgb, const GoalQuery& query,
                                 const std::vector<Frontier>& frontiers,
                                 const std::string& history) override;

  int fallback_count() const { return fallbacks_; }
  const std::string& last_error() const { return last_error_; }

 private:
  std::string host_;
  int port_ = 0;
  std::chrono::milliseconds timeout_;
  double cell_size_, origin_x_, origin_y_;
  int fallbacks_ = 0;
  std::string last_error_;
};

}  // namespace goalnav
