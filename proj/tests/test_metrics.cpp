#include <random>
#include <sstream>

#include "doctest.h"
#include "goalnav/metrics.hpp"
#include "json.hpp"

using namespace goalnav;

namespace {

SubtaskRecord rec(bool success, double d_geo, double d_agent, double dtg_final,
                  int steps = 10, const std::string& label = "sofa") {
  SubtaskRecord r;
  r.goal_label = label;
  r.success = success;
  r.stop_called = success;
  r.d_geo = d_geo;
  r.d_agent = d_agent;
  r.dtg_final = dtg_final;
  r.steps = steps;
  return r;
}

}  // namespace

TEST_CASE("spl formula with the geodesic-start convention") {
  CHECK(spl(rec(true, 2.0, 4.0, 0.5)) == doctest::Approx(0.5));
  CHECK(spl(rec(true, 2.0, 2.0, 0.5)) == doctest::Approx(1.0));
  // shorter-than-geodesic path clamps through the max in the denominator
  CHECK(spl(rec(true, 2.0, 1.0, 0.5)) == doctest::Approx(1.0));
  CHECK(spl(rec(false, 2.0, 1.0, 3.0)) == doctest::Approx(0.0));
}

TEST_CASE("accumulate_multiagent_path takes the per-round max") {
  CHECK(accumulate_multiagent_path({{1.0, 2.0}, {3.0, 1.0}}) ==
        doctest::Approx(5.0));
  CHECK(accumulate_multiagent_path({{0.25}, {0.0}, {0.25}}) ==
        doctest::Approx(0.5));
  CHECK(accumulate_multiagent_path({}) == doctest::Approx(0.0));
}

TEST_CASE("dtg is the min over agents") {
  CHECK(dtg({3.0, 1.5, 2.0}) == doctest::Approx(1.5));
  CHECK(dtg({0.7}) == doctest::Approx(0.7));
}

TEST_CASE("metric helpers match brute-force oracles on random records") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int rounds = 1 + static_cast<int>(u(rng));
    const int agents = 1 + static_cast<int>(u(rng)) % 3;
    std::vector<std::vector<double>> disp(rounds,
                                          std::vector<double>(agents));
    double expect = 0.0;
    for (auto& row : disp) {
      double mx = 0.0;
      for (double& d : row) {
        d = u(rng);
        mx = std::max(mx, d);
      }
      expect += mx;
    }
    CHECK(accumulate_multiagent_path(disp) == doctest::Approx(expect));

    const bool success = trial % 2 == 0;
    const double d_geo = 0.1 + u(rng), d_agent = 0.1 + u(rng);
    const double expect_spl =
        success ? d_geo / std::max(d_geo, d_agent) : 0.0;
    CHECK(spl(rec(success, d_geo, d_agent, 1.0)) ==
          doctest::Approx(expect_spl));
  }
}

TEST_CASE("episode categories split perfect/partial/failure") {
  EpisodeResult perfect{"a", {rec(true, 1, 1, 0.2), rec(true, 1, 1, 0.3)}};
  EpisodeResult partial{"b", {rec(true, 1, 1, 0.2), rec(false, 1, 1, 2.0)}};
  EpisodeResult failed{"c", {rec(false, 1, 1, 4.0), rec(false, 1, 1, 2.0)}};
  CHECK(perfect.category() == EpisodeCategory::kPerfect);
  CHECK(partial.category() == EpisodeCategory::kPartial);
  CHECK(failed.category() == EpisodeCategory::kCompleteFailure);
}

TEST_CASE("summarize aggregates SR, DTG bands and per-label counts") {
  EpisodeResult a{"a",
                  {rec(true, 2, 4, 0.5, 20, "sofa"),
                   rec(false, 2, 4, 1.0, 500, "bed"),
                   rec(false, 2, 4, 2.0, 500, "bed"),
                   rec(false, 2, 4, 4.0, 500, "tv")}};
  const SummaryReport s = summarize({a});
  CHECK(s.episodes == 1);
  CHECK(s.subtasks == 4);
  CHECK(s.sr == doctest::Approx(0.25));
  CHECK(s.failures_dtg_lt_1_5 == 1);
  CHECK(s.failures_dtg_1_5_to_3 == 1);
  CHECK(s.failures_dtg_gt_3 == 1);
  CHECK(s.per_label.at("bed") == std::pair<int, int>{0, 2});
  CHECK(s.per_label.at("sofa") == std::pair<int, int>{1, 1});
  CHECK(s.mean_steps_to_success == doctest::Approx(20.0));
  CHECK(s.partial_pct == doctest::Approx(100.0));
  CHECK(!s.to_table().empty());
}

TEST_CASE("record_to_jsonl emits one parseable object per subtask") {
  EpisodeResult e{"scene_7",
                  {rec(true, 2.0, 4.0, 0.5, 42, "lamp"),
                   rec(false, 1.0, 3.0, 2.5, 500, "tv")}};
  const std::string out = record_to_jsonl(e);
  std::istringstream in(out);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["scenario"] == "scene_7");
    CHECK(j["subtask_index"] == n);
    CHECK(j.contains("goal"));
    CHECK(j.contains("success"));
    CHECK(j.contains("d_geo_m"));
    CHECK(j.contains("d_agent_m"));
    CHECK(j.contains("dtg_m"));
    CHECK(j.contains("spl"));
    CHECK(j.contains("steps"));
    ++n;
  }
  CHECK(n == 2);
  CHECK(nlohmann::json::parse(out.substr(0, out.find('\n')))["spl"] ==
        doctest::Approx(0.5));
}
