#include "goalnav/batch.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <thread>

#include "json.hpp"

#include "goalnav/map_io.hpp"
#include "goalnav/perception_oracles.hpp"
#include "goalnav/scorer_client.hpp"

namespace fs = std::filesystem;

namespace goalnav {

std::string options_to_json(const BatchOptions& opt) {
  nlohmann::ordered_json j;
  j["scenario_dir"] = opt.scenario_dir;
  j["out_dir"] = opt.out_dir;
  j["agents"] = opt.agents;
  j["budget"] = opt.budget;
  j["scorer"] = opt.scorer;
  j["detector"] = opt.detector;
  j["w"] = opt.w;
  j["beta"] = opt.beta;
  j["tau_det"] = opt.tau_det;
  j["n_confirm"] = opt.n_confirm;
  j["seed"] = opt.seed;
  j["dump_maps"] = opt.dump_maps;
  j["value_map"] = opt.value_map;
  j["vlm_reasoning"] = opt.vlm_reasoning;
  return j.dump(2) + "\n";
}

NavConfig nav_config_from_options(const Scenario& sc, const BatchOptions& opt) {
  NavConfig cfg = default_nav_config(sc);
  cfg.budget_steps = opt.budget;
  cfg.blend_w = opt.w;
  cfg.ucb_beta = opt.beta;
  cfg.tau_det = opt.tau_det;
  cfg.n_confirm = opt.n_confirm;
  cfg.value_map_enabled = opt.value_map;
  cfg.vlm_reasoning = opt.vlm_reasoning;
  return cfg;
}

namespace {

std::unique_ptr<Detector> make_detector(const BatchOptions& opt,
                                        const World& world,
                                        const NavConfig& cfg) {
  if (opt.detector == "oracle")
    return std::make_unique<OracleDetector>(world, cfg.intr, cfg.ext);
  if (opt.detector == "external")
    // no detection wire schema ships with the repo; the external slot
    // reports unavailable and the loop degrades to pure exploration
    return std::make_unique<FailingDetector>();
  throw std::invalid_argument("unknown detector: " + opt.detector);
}

std::unique_ptr<Scorer> make_scorer(const BatchOptions& opt, const World& world,
                                    const NavConfig& cfg) {
  if (opt.scorer == "oracle")
    return std::make_unique<GeodesicOracleScorer>(world);
  if (opt.scorer == "uniform") return std::make_unique<UniformScorer>();
  if (opt.scorer == "adversarial")
    return std::make_unique<AdversarialScorer>(world);
  if (opt.scorer == "external")
    return std::make_unique<ExternalScorer>("", kScorerTimeoutDefault,
                                            cfg.map.cell_size,
                                            cfg.map.origin_x, cfg.map.origin_y);
  throw std::invalid_argument("unknown scorer: " + opt.scorer);
}

struct EpisodeSlot {
  bool skipped = false;
  std::string skip_reason;
  EpisodeResult result;
};

void dump_round_maps(const Team& team, const std::string& dir, int subtask,
                     int round) {
  const SemanticBevMap& m = team.shared_map();
  char stem[64];
  std::snprintf(stem, sizeof(stem), "/s%02d_r%04d_", subtask, round);
  write_pgm(dir + stem + "obstacle.pgm", m.obstacle, m.origin_x, m.origin_y,
            m.cell_size);
  write_pgm(dir + stem + "explored.pgm", m.explored, m.origin_x, m.origin_y,
            m.cell_size);
  const ValueMap& vm = team.agents().front().value_map;
  write_pgm(dir + stem + "value.pgm", vm.mu, 0.0, 1.0, vm.origin_x,
            vm.origin_y, vm.cell_size);
}

void run_one(const std::string& path, const BatchOptions& opt,
             EpisodeSlot& slot) {
  Scenario sc;
  try {
    sc = load_scenario(path);
  } catch (const std::exception& e) {
    slot.skipped = true;
    slot.skip_reason = path + ": " + e.what();
    return;
  }
  const std::string why = validate_scenario(sc);
  if (!why.empty()) {
    slot.skipped = true;
    slot.skip_reason = path + ": " + why;
    return;
  }

  const World world = build_world(sc);
  const NavConfig cfg = nav_config_from_options(sc, opt);
  auto detector = make_detector(opt, world, cfg);
  auto scorer = make_scorer(opt, world, cfg);
  Team team(world, cfg, *detector, *scorer, opt.agents);

  std::string scen_dir;
  FloatGrid trajectory;
  if (!opt.out_dir.empty()) {
    scen_dir = (fs::path(opt.out_dir) / sc.name).string();
    fs::create_directories(scen_dir);
    // overlay base: true obstacles dark, free space light
    const BoolGrid& bev = world.bev_obstacle();
    trajectory = FloatGrid(bev.width(), bev.height(), 0.f);
    for (int y = 0; y < bev.height(); ++y)
      for (int x = 0; x < bev.width(); ++x)
        trajectory.at(x, y) = bev.at(x, y) ? 40.f : 230.f;
  }

  int subtask_index = 0;
  team.round_hook = [&](const Team& t, int round) {
    if (!trajectory.width()) return;
    for (const AgentState& a : t.agents()) {
      const Cell c = t.shared_map().world_to_cell(a.pose.x, a.pose.y);
      if (trajectory.in_bounds(c))
        trajectory.at(c) = static_cast<float>(90 + 50 * (a.id % 3));
    }
    if (opt.dump_maps) dump_round_maps(t, scen_dir, subtask_index, round);
  };

  EpisodeResult ep;
  ep.scenario_name = sc.name;
  for (std::size_t i = 0; i < sc.subtasks.size(); ++i) {
    subtask_index = static_cast<int>(i);
    GoalQuery q{sc.subtasks[i], static_cast<int>(i)};
    ep.subtasks.push_back(team.run_subtask(q));
  }
  slot.result = std::move(ep);

  if (!scen_dir.empty()) {
    write_pgm(scen_dir + "/trajectory.pgm", trajectory, 0.0, 255.0, 0.0, 0.0,
              sc.cell_size);
    std::ofstream rec(scen_dir + "/records.jsonl", std::ios::binary);
    rec << record_to_jsonl(slot.result);
  }
}

}  // namespace

BatchResult run_batch(const BatchOptions& opt) {
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(opt.scenario_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());

  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    std::ofstream cfg(fs::path(opt.out_dir) / "config.json", std::ios::binary);
    cfg << options_to_json(opt);
  }

  std::vector<EpisodeSlot> slots(paths.size());
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers = std::min<std::size_t>(
      paths.size(),
      opt.workers > 0 ? static_cast<unsigned>(opt.workers) : std::max(1u, hw));

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= paths.size()) return;
      run_one(paths[i], opt, slots[i]);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  BatchResult out;
  for (EpisodeSlot& s : slots) {
    if (s.skipped)
      out.skipped.push_back(s.skip_reason);
    else
      out.episodes.push_back(std::move(s.result));
  }
  out.summary = summarize(out.episodes);
  for (const EpisodeResult& ep : out.episodes)
    out.records_jsonl += record_to_jsonl(ep);

  if (!opt.out_dir.empty()) {
    std::ofstream rec(fs::path(opt.out_dir) / "records.jsonl",
                      std::ios::binary);
    rec << out.records_jsonl;
    std::ofstream sum(fs::path(opt.out_dir) / "summary.txt", std::ios::binary);
    sum << out.summary.to_table();
    for (const std::string& s : out.skipped) sum << "skipped: " << s << "\n";
  }
  return out;
}

}  // namespace goalnav
