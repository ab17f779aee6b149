#include "scenepilot/region.hpp"

#include "scenepilot/error.hpp"

#include <cstdio>

namespace scenepilot {

RegionMap RegionMap::defaults() {
  RegionMap m;
  for (const char* c : {"AT", "BE", "CH", "CZ", "DE", "DK", "ES", "FI", "FR",
                        "GB", "IE", "IT", "NL", "NO", "PL", "PT", "SE", "UK"}) {
    m.country_region[c] = "eu";
  }
  m.country_region["JP"] = "jp-kr";
  m.country_region["KR"] = "jp-kr";
  m.country_region["US"] = "us";
  for (const char* c : {"AU", "BR", "CA", "CN", "ID", "IN", "MX", "SG", "TH",
                        "ZA"}) {
    m.country_region[c] = "oth";
  }
  m.left_hand = {"AU", "GB", "ID", "IE", "IN", "JP", "SG", "TH", "UK", "ZA"};
  return m;
}

const std::string& RegionMap::region_of(const std::string& country) const {
  const auto it = country_region.find(country);
  if (it == country_region.end()) {
    throw BenchError(Errc::unmapped_country,
                     "country not in region map: " + country);
  }
  return it->second;
}

TrafficSide RegionMap::side_of(const std::string& country) const {
  return left_hand.count(country) ? TrafficSide::left : TrafficSide::right;
}

GeneralizationReport generalization_report(const std::vector<ClipRecord>& clips,
                                           const RegionMap& map,
                                           const ScoreCard& baseline,
                                           const ScoreFn& score) {
  std::map<std::string, std::vector<ClipRecord>> by_region;
  std::map<TrafficSide, std::vector<ClipRecord>> by_side;
  for (const ClipRecord& clip : clips) {
    by_region[map.region_of(clip.country)].push_back(clip);
    by_side[clip.traffic_side].push_back(clip);
  }

  const auto build = [&](const std::string& label,
                         const std::vector<ClipRecord>& group) {
    GroupReport g;
    g.label = label;
    g.clip_count = group.size();
    g.card = score(group);
    for (const auto& [module, total] : baseline.module_totals) {
      const auto it = g.card.module_totals.find(module);
      const double val = it == g.card.module_totals.end() ? 0.0 : it->second;
      g.module_drops[module] = total - val;
    }
    g.overall_drop = baseline.overall - g.card.overall;
    return g;
  };

  GeneralizationReport report;
  report.baseline = baseline;
  for (const auto& [label, group] : by_region) {
    report.by_region.push_back(build(label, group));
  }
  for (TrafficSide side : {TrafficSide::right, TrafficSide::left}) {
    const auto it = by_side.find(side);
    if (it == by_side.end()) continue;
    report.by_side.push_back(build(to_string(side), it->second));
  }
  return report;
}

std::string render_generalization_report(const GeneralizationReport& report) {
  std::string out = "generalization report\n";
  char line[160];
  std::snprintf(line, sizeof(line), "baseline overall %8.4f\n",
                report.baseline.overall);
  out += line;
  const auto emit = [&](const char* heading,
                        const std::vector<GroupReport>& groups) {
    out += "\n";
    out += heading;
    out += "\n";
    for (const GroupReport& g : groups) {
      std::snprintf(line, sizeof(line),
                    "%-8s clips %5zu overall %8.4f drop %+8.4f\n",
                    g.label.c_str(), g.clip_count, g.card.overall,
                    g.overall_drop);
      out += line;
      for (const auto& [module, drop] : g.module_drops) {
        std::snprintf(line, sizeof(line),
                      "         %-22s %8.4f drop %+8.4f\n", to_string(module),
                      g.card.module_totals.at(module), drop);
        out += line;
      }
    }
  };
  emit("by region", report.by_region);
  emit("by traffic side", report.by_side);
  return out;
}

}  // namespace scenepilot
