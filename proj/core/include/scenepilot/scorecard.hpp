#pragma once

#include "scenepilot/records.hpp"
#include "scenepilot/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scenepilot {

inline constexpr const char* kBenchVersion = "0.1.0";

// Two-level weighting: metric weights sum to 1 inside each module, module
// weights sum to 1 across the card.
struct WeightTable {
  std::map<ModuleId, double> module_weights;
  std::map<MetricId, double> metric_weights;

  static WeightTable defaults();
  void validate() const;
};

// Fills module totals and the overall score from the normalized metric
// entries already on the card. Every weighted metric must be present;
// absence is an error, never an implicit zero.
void aggregate_scorecard(ScoreCard& card, const WeightTable& weights);

// 64-bit FNV-1a over a byte string; the digest used to fingerprint configs
// and inputs in reports.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::uint64_t digest);

// Labelled digests of the inputs a report was computed from.
using InputDigests = std::vector<std::pair<std::string, std::string>>;

// Canonically ordered plain-text report; identical inputs give identical
// bytes (no timestamps, no locale formatting).
std::string render_text_report(const ScoreCard& card,
                               const std::string& config_digest,
                               const InputDigests& inputs);

// Same content as a single JSON document.
std::string render_json_report(const ScoreCard& card,
                               const std::string& config_digest,
                               const InputDigests& inputs);

}  // namespace scenepilot
