#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "goalnav/coordination.hpp"
#include "goalnav/metrics.hpp"

namespace goalnav {

struct BatchOptions {
  std::string scenario_dir;
  std::string out_dir;
  int agents = 2;
  int budget = 500;
  std::string scorer = "oracle";    // oracle | uniform | adversarial | external
  std::string detector = "oracle";  // oracle | external
  double w = kBlendWeightDefault;
  double beta = kUcbBetaDefault;
  double tau_det = kTauDetDefault;
  int n_confirm = kNConfirmDefault;
  std::uint64_t seed = 0;
  bool dump_maps = false;
  bool value_map = true;
  bool vlm_reasoning = true;
  int workers = 0;  // 0: hardware concurrency
};

std::string options_to_json(const BatchOptions& opt);

struct BatchResult {
  std::vector<EpisodeResult> episodes;           // input order, skipped omitted
  std::vector<std::string> skipped;              // "path: reason" per skip
  SummaryReport summary;
  std::string records_jsonl;                     // concatenated subtask records
};

// Runs every .json scenario under opt.scenario_dir through the episode loop.
// Episodes run on a worker pool; logs are assembled in input order afterwards
// so output is byte-stable for a fixed configuration. When out_dir is set,
// writes config.json, records.jsonl, summary.txt and, per scenario, a
// trajectory overlay PGM (plus per-round map dumps with dump_maps).
BatchResult run_batch(const BatchOptions& opt);

// Applies the option overrides onto the scenario-derived defaults.
NavConfig nav_config_from_options(const Scenario& sc, const BatchOptions& opt);

}  // namespace goalnav
