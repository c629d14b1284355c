#pragma once

#include <map>
#include <string>
#include <vector>

namespace goalnav {

struct SubtaskRecord {
  std::string goal_label;
  bool success = false;
  bool stop_called = false;
  double d_geo = 0.0;       // geodesic at subtask start, meters
  double d_agent = 0.0;     // team path length under the max-per-round rule
  double dtg_final = 0.0;   // min over agents at termination
  int steps = 0;            // rounds consumed
};

enum class EpisodeCategory { kPerfect, kPartial, kCompleteFailure };

struct EpisodeResult {
  std::string scenario_name;
  std::vector<SubtaskRecord> subtasks;

  EpisodeCategory category() const;
};

// 0 on failure, else d_geo / max(d_geo, d_agent).
double spl(const SubtaskRecord& record);

// Sum over rounds of the maximum per-agent displacement in that round.
// displacements[round][agent].
double accumulate_multiagent_path(
    const std::vector<std::vector<double>>& displacements);

// Min over agents of the Euclidean distance to the nearest footprint point.
// distances: per-agent precomputed nearest-footprint distances.
double dtg(const std::vector<double>& per_agent_distances);

struct SummaryReport {
  int episodes = 0;
  int subtasks = 0;
  double sr = 0.0;
  double mean_spl = 0.0;
  double mean_dtg = 0.0;
  double median_dtg = 0.0;
  double perfect_pct = 0.0;
  double partial_pct = 0.0;
  double failure_pct = 0.0;
  // failure buckets by final DTG band
  int failures_dtg_lt_1_5 = 0;
  int failures_dtg_1_5_to_3 = 0;
  int failures_dtg_gt_3 = 0;
  std::map<std::string, std::pair<int, int>> per_label;  // label -> (succ, total)
  double mean_steps_to_success = 0.0;

  std::string to_table() const;
};

SummaryReport summarize(const std::vector<EpisodeResult>& results);

// One JSON object per subtask, stable field names, newline-delimited.
std::string record_to_jsonl(const EpisodeResult& episode);

}  // namespace goalnav
