#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"

#include "goalnav/batch.hpp"
#include "goalnav/scenario.hpp"

namespace {

bool parse_switch(const std::string& v) { return v == "on"; }

int cmd_run(const goalnav::BatchOptions& opt) {
  const goalnav::BatchResult res = goalnav::run_batch(opt);
  std::fputs(res.summary.to_table().c_str(), stdout);
  for (const std::string& s : res.skipped)
    std::fprintf(stderr, "skipped: %s\n", s.c_str());
  return res.episodes.empty() && !res.skipped.empty() ? 1 : 0;
}

int cmd_generate(const std::string& out_dir, int count, std::uint64_t seed,
                 bool with_mirror) {
  std::filesystem::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    goalnav::Scenario sc = goalnav::generate_scenario(seed + i);
    char name[64];
    std::snprintf(name, sizeof(name), "scenario_%03d", i);
    sc.name = name;
    goalnav::save_scenario(sc, out_dir + "/" + sc.name + ".json");
  }
  if (with_mirror) {
    goalnav::Scenario sc = goalnav::make_mirror_scenario();
    goalnav::save_scenario(sc, out_dir + "/" + sc.name + ".json");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-agent object-goal navigation harness"};
  app.require_subcommand(1);

  goalnav::BatchOptions opt;
  std::string value_map = "on";
  std::string vlm_reasoning = "on";

  CLI::App* run = app.add_subcommand("run", "run a batch of episodes");
  run->add_option("--scenario-dir", opt.scenario_dir, "directory of scenario JSON files")
      ->required();
  run->add_option("--agents", opt.agents, "number of agents")->default_val(2);
  run->add_option("--budget", opt.budget, "round budget per subtask")
      ->default_val(500);
  run->add_option("--scorer", opt.scorer, "frontier scorer backend")
      ->check(CLI::IsMember({"oracle", "uniform", "adversarial", "external"}))
      ->default_val("oracle");
  run->add_option("--detector", opt.detector, "detector backend")
      ->check(CLI::IsMember({"oracle", "external"}))
      ->default_val("oracle");
  run->add_option("--w", opt.w, "utility blend weight")->default_val(0.35);
  run->add_option("--beta", opt.beta, "UCB exploration weight")
      ->default_val(1.7);
  run->add_option("--tau-det", opt.tau_det, "detection confidence threshold")
      ->default_val(0.30);
  run->add_option("--n-confirm", opt.n_confirm, "consecutive detections to confirm")
      ->default_val(2);
  run->add_option("--seed", opt.seed, "run seed (echoed into logs)")
      ->default_val(0);
  run->add_option("--out-dir", opt.out_dir, "artifact output directory");
  run->add_flag("--dump-maps", opt.dump_maps, "write per-round map PGMs");
  run->add_option("--value-map", value_map, "Bayesian value map")
      ->check(CLI::IsMember({"on", "off"}))
      ->default_val("on");
  run->add_option("--vlm-reasoning", vlm_reasoning, "frontier scorer reasoning")
      ->check(CLI::IsMember({"on", "off"}))
      ->default_val("on");
  run->add_option("--workers", opt.workers, "episode worker threads (0 = auto)")
      ->default_val(0);

  std::string gen_out;
  int gen_count = 20;
  std::uint64_t gen_seed = 0;
  bool gen_mirror = false;
  CLI::App* gen = app.add_subcommand("generate", "generate procedural scenarios");
  gen->add_option("--out-dir", gen_out, "output directory")->required();
  gen->add_option("--count", gen_count, "number of scenarios")->default_val(20);
  gen->add_option("--seed", gen_seed, "generator seed")->default_val(0);
  gen->add_flag("--with-mirror", gen_mirror,
                "also emit the mirror regression scene");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    opt.value_map = parse_switch(value_map);
    opt.vlm_reasoning = parse_switch(vlm_reasoning);
    return cmd_run(opt);
  }
  return cmd_generate(gen_out, gen_count, gen_seed, gen_mirror);
}
