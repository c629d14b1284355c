#include <random>

#include "doctest.h"
#include "goalnav/batch.hpp"
#include "goalnav/coordination.hpp"
#include "goalnav/perception_oracles.hpp"
#include "goalnav/scenario.hpp"

using namespace goalnav;

namespace {

SemanticBevMap random_map(std::mt19937& rng, int side = 12) {
  MapConfig cfg;
  cfg.side = side;
  SemanticBevMap m(cfg);
  std::bernoulli_distribution coin(0.4);
  std::uniform_real_distribution<float> u(0.f, 2.f);
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) {
      m.obstacle.at(x, y) = coin(rng);
      m.explored.at(x, y) = coin(rng);
      for (auto& ch : m.semantic) ch.at(x, y) = u(rng);
    }
  return m;
}

}  // namespace

TEST_CASE("fuse_maps is OR on booleans and max on semantics") {
  std::mt19937 rng(3);
  const SemanticBevMap a = random_map(rng);
  const SemanticBevMap b = random_map(rng);
  const SemanticBevMap f = fuse_maps(std::vector<SemanticBevMap>{a, b});
  for (int y = 0; y < a.side(); ++y)
    for (int x = 0; x < a.side(); ++x) {
      CHECK(f.obstacle.at(x, y) == (a.obstacle.at(x, y) || b.obstacle.at(x, y)));
      CHECK(f.explored.at(x, y) == (a.explored.at(x, y) || b.explored.at(x, y)));
      for (std::size_t c = 0; c < f.semantic.size(); ++c)
        CHECK(f.semantic[c].at(x, y) ==
              std::max(a.semantic[c].at(x, y), b.semantic[c].at(x, y)));
    }
}

TEST_CASE("fuse_maps algebra: commutative, associative, idempotent") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const SemanticBevMap a = random_map(rng);
    const SemanticBevMap b = random_map(rng);
    const SemanticBevMap c = random_map(rng);
    using V = std::vector<SemanticBevMap>;
    CHECK(fuse_maps(V{a, b}) == fuse_maps(V{b, a}));
    CHECK(fuse_maps(V{fuse_maps(V{a, b}), c}) ==
          fuse_maps(V{a, fuse_maps(V{b, c})}));
    CHECK(fuse_maps(V{a, a}) == a);
    // a fresh map is the identity
    MapConfig cfg;
    cfg.side = a.side();
    CHECK(fuse_maps(V{a, SemanticBevMap(cfg)}) == a);
  }
}

TEST_CASE("fuse_maps rejects mismatched geometry") {
  std::mt19937 rng(5);
  const SemanticBevMap a = random_map(rng, 12);
  const SemanticBevMap b = random_map(rng, 10);
  CHECK_THROWS(fuse_maps(std::vector<SemanticBevMap>{a, b}));
  CHECK_THROWS(fuse_maps(std::vector<SemanticBevMap>{}));
}

TEST_CASE("allocate_frontiers is sequential greedy without double booking") {
  const Allocation alloc = allocate_frontiers(
      3, {{0.9, 0.8, 0.1}, {0.95, 0.2, 0.1}, {0.5, 0.6, 0.7}});
  REQUIRE(alloc.assignment.size() == 3);
  CHECK(alloc.assignment[0] == 0u);  // agent 0 picks first
  CHECK(alloc.assignment[1] == 1u);  // best frontier already taken
  CHECK(alloc.assignment[2] == 2u);

  // more agents than frontiers: the surplus agent gets nothing
  const Allocation tight = allocate_frontiers(1, {{0.2}, {0.9}});
  CHECK(tight.assignment[0] == 0u);
  CHECK(!tight.assignment[1].has_value());

  const Allocation none = allocate_frontiers(0, {{}, {}});
  CHECK(!none.assignment[0].has_value());
  CHECK(!none.assignment[1].has_value());
}

TEST_CASE("Team runs a full oracle subtask to success") {
  const Scenario sc = generate_scenario(1);
  const World w = build_world(sc);
  const NavConfig cfg = default_nav_config(sc);
  OracleDetector det(w, cfg.intr, cfg.ext);
  GeodesicOracleScorer scorer(w);
  Team team(w, cfg, det, scorer, 2);

  CHECK(team.agents().size() == 2);
  const SubtaskRecord r = team.run_subtask({sc.subtasks[0], 0});
  CHECK(r.goal_label == sc.subtasks[0]);
  CHECK(r.steps <= cfg.budget_steps);
  CHECK(r.d_geo > 0.0);
  CHECK(r.success);
  CHECK(r.stop_called);
  CHECK(r.dtg_final <= kSuccessRadiusM + 1e-6);
}

TEST_CASE("Team rejects degenerate constructions") {
  const Scenario sc = generate_scenario(1);
  const World w = build_world(sc);
  const NavConfig cfg = default_nav_config(sc);
  OracleDetector det(w, cfg.intr, cfg.ext);
  GeodesicOracleScorer scorer(w);
  CHECK_THROWS(Team(w, cfg, det, scorer, 0));
  const World empty;
  CHECK_THROWS(Team(empty, cfg, det, scorer, 1));
}

TEST_CASE("nav_config_from_options forwards the CLI overrides") {
  const Scenario sc = generate_scenario(2);
  BatchOptions opt;
  opt.w = 0.2;
  opt.beta = 1.1;
  opt.tau_det = 0.5;
  opt.n_confirm = 3;
  opt.budget = 77;
  opt.value_map = false;
  opt.vlm_reasoning = false;
  const NavConfig cfg = nav_config_from_options(sc, opt);
  CHECK(cfg.blend_w == doctest::Approx(0.2));
  CHECK(cfg.ucb_beta == doctest::Approx(1.1));
  CHECK(cfg.tau_det == doctest::Approx(0.5));
  CHECK(cfg.n_confirm == 3);
  CHECK(cfg.budget_steps == 77);
  CHECK(!cfg.value_map_enabled);
  CHECK(!cfg.vlm_reasoning);
  CHECK(cfg.map.cell_size == doctest::Approx(sc.cell_size));
}
