#include "doctest.h"
#include "goalnav/perception.hpp"

using namespace goalnav;

namespace {

std::vector<Detection> det(std::initializer_list<double> confidences) {
  std::vector<Detection> out;
  for (double c : confidences) {
    Detection d;
    d.confidence = c;
    out.push_back(d);
  }
  return out;
}

// feeds a confidence sequence frame by frame, one detection per frame;
// returns the frame index of the first confirmation, or -1
int first_confirmed(std::initializer_list<double> seq, double tau = 0.30,
                    int n = 2) {
  ConfirmationState s;
  int frame = 0;
  for (double c : seq) {
    const ConfirmResult r = confirm(s, det({c}), tau, n);
    s = r.state;
    if (r.confirmed) return frame;
    ++frame;
  }
  return -1;
}

}  // namespace

TEST_CASE("confirm needs n consecutive hits above the strict threshold") {
  CHECK(first_confirmed({0.4, 0.35}) == 1);
  CHECK(first_confirmed({0.4}) == -1);
  CHECK(first_confirmed({0.4, 0.1, 0.4}) == -1);        // miss resets
  CHECK(first_confirmed({0.4, 0.1, 0.4, 0.4}) == 3);
  CHECK(first_confirmed({0.29, 0.29, 0.29}) == -1);     // below threshold
  CHECK(first_confirmed({0.30, 0.31, 0.31}) == 2);      // 0.30 is not > tau
  CHECK(first_confirmed({0.9}, 0.30, 1) == 0);
}

TEST_CASE("confirm picks the best detection of the frame") {
  ConfirmationState s;
  ConfirmResult r = confirm(s, det({0.1, 0.8, 0.2}), 0.30, 2);
  CHECK(r.state.consecutive_hits == 1);
  r = confirm(r.state, det({0.6}), 0.30, 2);
  CHECK(r.confirmed);
  CHECK(r.state.last_confirmed.confidence == doctest::Approx(0.6));
}

TEST_CASE("confirm with no detections resets the streak") {
  ConfirmationState s;
  s.consecutive_hits = 1;
  const ConfirmResult r = confirm(s, {}, 0.30, 2);
  CHECK(!r.confirmed);
  CHECK(r.state.consecutive_hits == 0);
}

TEST_CASE("blend_utility mixes scorer and value channels") {
  const auto u = blend_utility({0.8}, {0.2}, 0.35);
  CHECK(u[0] == doctest::Approx(0.59));  // 0.65*0.8 + 0.35*0.2

  const auto pure_s = blend_utility({0.8, 0.1}, {0.2, 0.9}, 0.0);
  CHECK(pure_s[0] == doctest::Approx(0.8));
  CHECK(pure_s[1] == doctest::Approx(0.1));

  const auto pure_v = blend_utility({0.8, 0.1}, {0.2, 0.9}, 1.0);
  CHECK(pure_v[0] == doctest::Approx(0.2));
  CHECK(pure_v[1] == doctest::Approx(0.9));

  CHECK_THROWS(blend_utility({0.5}, {0.5, 0.5}, 0.35));
}

TEST_CASE("argmax_utility breaks ties toward the lowest index") {
  CHECK(argmax_utility({0.1, 0.7, 0.7, 0.2}) == 1);
  CHECK(argmax_utility({0.5}) == 0);
  CHECK_THROWS(argmax_utility({}));
}

TEST_CASE("UniformScorer returns the fallback score per frontier") {
  UniformScorer s;
  const auto scores =
      s.score_frontiers({}, {}, std::vector<Frontier>(3), "");
  REQUIRE(scores.size() == 3);
  for (double v : scores) CHECK(v == doctest::Approx(kUniformFallbackScore));
}
