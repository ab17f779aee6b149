#pragma once

#include "scenepilot/records.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace scenepilot {

// Country (ISO-3166 alpha-2) to region grouping plus the set of left-hand
// traffic countries. The shipped default is editable config; the map, not
// the code, is authoritative for groupings.
struct RegionMap {
  std::map<std::string, std::string> country_region;
  std::set<std::string> left_hand;

  static RegionMap defaults();
  // Throws BenchError(unmapped_country).
  const std::string& region_of(const std::string& country) const;
  TrafficSide side_of(const std::string& country) const;
};

// One scored clip subset with its gap to the whole-run baseline
// (baseline minus group, positive = worse than baseline).
struct GroupReport {
  std::string label;
  std::size_t clip_count = 0;
  ScoreCard card;
  std::map<ModuleId, double> module_drops;
  double overall_drop = 0.0;
};

struct GeneralizationReport {
  ScoreCard baseline;
  std::vector<GroupReport> by_region;  // sorted by label
  std::vector<GroupReport> by_side;    // right-hand, then left-hand traffic
};

// Scores a clip subset; closes over the predictions and config.
using ScoreFn = std::function<ScoreCard(const std::vector<ClipRecord>&)>;

// Re-scores the run per region and per traffic side and reports each
// group's gap to the baseline card. Every country present must be mapped.
GeneralizationReport generalization_report(const std::vector<ClipRecord>& clips,
                                           const RegionMap& map,
                                           const ScoreCard& baseline,
                                           const ScoreFn& score);

// Deterministic plain-text rendering of the report.
std::string render_generalization_report(const GeneralizationReport& report);

}  // namespace scenepilot
