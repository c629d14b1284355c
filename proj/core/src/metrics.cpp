#include "goalnav/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace goalnav {

EpisodeCategory EpisodeResult::category() const {
  int succ = 0;
  for (const auto& r : subtasks) succ += r.success ? 1 : 0;
  if (succ == 0) return EpisodeCategory::kCompleteFailure;
  if (succ == static_cast<int>(subtasks.size())) return EpisodeCategory::kPerfect;
  return EpisodeCategory::kPartial;
}

double spl(const SubtaskRecord& record) {
  if (!(record.d_geo > 0.0))
    throw std::invalid_argument("spl: d_geo must be positive");
  if (!record.success) return 0.0;
  return record.d_geo / std::max(record.d_geo, record.d_agent);
}

double accumulate_multiagent_path(
    const std::vector<std::vector<double>>& displacements) {
  double total = 0.0;
  for (const auto& round : displacements) {
    double mx = 0.0;
    for (double d : round) mx = std::max(mx, d);
    total += mx;
  }
  return total;
}

double dtg(const std::vector<double>& per_agent_distances) {
  double best = std::numeric_limits<double>::infinity();
  for (double d : per_agent_distances) best = std::min(best, d);
  return best;
}

SummaryReport summarize(const std::vector<EpisodeResult>& results) {
  SummaryReport rep;
  rep.episodes = static_cast<int>(results.size());

  std::vector<double> dtgs;
  double spl_sum = 0.0;
  int successes = 0;
  int perfect = 0, partial = 0, failure = 0;
  double steps_sum = 0.0;
  int steps_n = 0;

  for (const auto& ep : results) {
    switch (ep.category()) {
      case EpisodeCategory::kPerfect: ++perfect; break;
      case EpisodeCategory::kPartial: ++partial; break;
      case EpisodeCategory::kCompleteFailure: ++failure; break;
    }
    for (const auto& r : ep.subtasks) {
      ++rep.subtasks;
      spl_sum += spl(r);
      dtgs.push_back(r.dtg_final);
      auto& lbl = rep.per_label[r.goal_label];
      ++lbl.second;
      if (r.success) {
        ++successes;
        ++lbl.first;
        steps_sum += r.steps;
        ++steps_n;
      } else {
        if (r.dtg_final < 1.5) ++rep.failures_dtg_lt_1_5;
        else if (r.dtg_final <= 3.0) ++rep.failures_dtg_1_5_to_3;
        else ++rep.failures_dtg_gt_3;
      }
    }
  }

  if (rep.subtasks > 0) {
    rep.sr = static_cast<double>(successes) / rep.subtasks;
    rep.mean_spl = spl_sum / rep.subtasks;
    rep.mean_dtg =
        std::accumulate(dtgs.begin(), dtgs.end(), 0.0) / dtgs.size();
    std::sort(dtgs.begin(), dtgs.end());
    rep.median_dtg = dtgs.size() % 2 == 1
                         ? dtgs[dtgs.size() / 2]
                         : (dtgs[dtgs.size() / 2 - 1] + dtgs[dtgs.size() / 2]) / 2;
  }
  if (rep.episodes > 0) {
    rep.perfect_pct = 100.0 * perfect / rep.episodes;
    rep.partial_pct = 100.0 * partial / rep.episodes;
    rep.failure_pct = 100.0 * failure / rep.episodes;
  }
  if (steps_n > 0) rep.mean_steps_to_success = steps_sum / steps_n;
  return rep;
}

std::string SummaryReport::to_table() const {
  std::string out;
  char buf[256];
  auto row = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof(buf), fmt, args...);
    out += buf;
  };
  row("episodes            %d\n", episodes);
  row("subtasks            %d\n", subtasks);
  row("subtask SR          %.4f\n", sr);
  row("mean SPL            %.4f\n", mean_spl);
  row("mean DTG (m)        %.3f\n", mean_dtg);
  row("median DTG (m)      %.3f\n", median_dtg);
  row("mean steps/success  %.1f\n", mean_steps_to_success);
  row("perfect %%           %.1f\n", perfect_pct);
  row("partial %%           %.1f\n", partial_pct);
  row("complete-failure %%  %.1f\n", failure_pct);
  row("failures DTG<1.5    %d\n", failures_dtg_lt_1_5);
  row("failures 1.5-3.0    %d\n", failures_dtg_1_5_to_3);
  row("failures DTG>3.0    %d\n", failures_dtg_gt_3);
  out += "per-label SR:\n";
  for (const auto& [label, sc] : per_label)
    row("  %-12s %d/%d\n", label.c_str(), sc.first, sc.second);
  return out;
}

std::string record_to_jsonl(const EpisodeResult& episode) {
  std::string out;
  for (std::size_t i = 0; i < episode.subtasks.size(); ++i) {
    const SubtaskRecord& r = episode.subtasks[i];
    nlohmann::ordered_json j;
    j["scenario"] = episode.scenario_name;
    j["subtask_index"] = i;
    j["goal"] = r.goal_label;
    j["success"] = r.success;
    j["stop_called"] = r.stop_called;
    j["d_geo_m"] = r.d_geo;
    j["d_agent_m"] = r.d_agent;
    j["dtg_m"] = r.dtg_final;
    j["spl"] = spl(r);
    j["steps"] = r.steps;
    out += j.dump();
    out += "\n";
  }
  return out;
}

}  // namespace goalnav
