#include "scenepilot/scorecard.hpp"

#include "scenepilot/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace scenepilot {

namespace {

using Json = nlohmann::ordered_json;

}  // namespace

WeightTable WeightTable::defaults() {
  WeightTable w;
  w.module_weights = {
      {ModuleId::scene, 0.15},
      {ModuleId::spatial, 0.35},
      {ModuleId::motion, 0.40},
      {ModuleId::gpt, 0.10},
  };
  w.metric_weights = {
      {MetricId::spice, 0.70},    {MetricId::risk_class_acc, 0.30},
      {MetricId::class_acc, 0.20}, {MetricId::emrde, 0.30},
      {MetricId::emrae, 0.20},    {MetricId::omrde, 0.20},
      {MetricId::omrae, 0.10},    {MetricId::dcs_acc, 0.20},
      {MetricId::mre_acc, 0.10},  {MetricId::are, 0.10},
      {MetricId::fde1, 0.10},     {MetricId::fde2, 0.10},
      {MetricId::fde3, 0.20},     {MetricId::ade, 0.20},
      {MetricId::gpt_alignment, 1.00},
  };
  return w;
}

void WeightTable::validate() const {
  const auto bad = [](const std::string& what) {
    throw BenchError(Errc::config_error, what);
  };
  double module_sum = 0.0;
  for (ModuleId m : kAllModules) {
    const auto it = module_weights.find(m);
    if (it == module_weights.end()) {
      bad(std::string("missing module weight for ") + to_string(m));
    }
    if (it->second < 0.0) bad("module weights must be non-negative");
    module_sum += it->second;
  }
  if (std::abs(module_sum - 1.0) > 1e-9) bad("module weights must sum to 1");

  std::map<ModuleId, double> per_module;
  for (const auto& [metric, weight] : metric_weights) {
    if (weight < 0.0) bad("metric weights must be non-negative");
    per_module[module_of(metric)] += weight;
  }
  for (ModuleId m : kAllModules) {
    if (std::abs(per_module[m] - 1.0) > 1e-9) {
      bad(std::string("metric weights within ") + to_string(m) +
          " must sum to 1");
    }
  }
}

void aggregate_scorecard(ScoreCard& card, const WeightTable& weights) {
  std::map<ModuleId, double> totals;
  for (ModuleId m : kAllModules) totals[m] = 0.0;
  for (const auto& [metric, weight] : weights.metric_weights) {
    const auto it = card.metrics.find(metric);
    if (it == card.metrics.end()) {
      throw BenchError(Errc::missing_metric,
                       std::string("metric absent from card: ") +
                           to_string(metric));
    }
    totals[module_of(metric)] += weight * it->second.normalized;
  }
  card.module_totals = totals;
  card.overall = 0.0;
  for (const auto& [module, weight] : weights.module_weights) {
    card.overall += weight * totals.at(module);
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv64:%016llx",
                static_cast<unsigned long long>(digest));
  return buf;
}

std::string render_text_report(const ScoreCard& card,
                               const std::string& config_digest,
                               const InputDigests& inputs) {
  std::string out;
  out += "scenepilot-bench report\n";
  out += "version: ";
  out += kBenchVersion;
  out += "\nconfig: " + config_digest + "\n";
  for (const auto& [label, digest] : inputs) {
    out += "input " + label + ": " + digest + "\n";
  }
  out += "\nmetric            raw          score    samples\n";
  for (const auto& [metric, entry] : card.metrics) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-16s %12.6f %8.4f %10zu\n",
                  to_string(metric), entry.raw, entry.normalized,
                  entry.samples);
    out += line;
  }
  out += "\n";
  for (const auto& [module, total] : card.module_totals) {
    char line[128];
    std::snprintf(line, sizeof(line), "module %-22s %8.4f\n",
                  to_string(module), total);
    out += line;
  }
  char overall_line[64];
  std::snprintf(overall_line, sizeof(overall_line), "overall %29.4f\n",
                card.overall);
  out += overall_line;
  if (card.judge_failures > 0) {
    out += "judge failures: " + std::to_string(card.judge_failures) + "\n";
  }
  return out;
}

std::string render_json_report(const ScoreCard& card,
                               const std::string& config_digest,
                               const InputDigests& inputs) {
  Json doc;
  doc["version"] = kBenchVersion;
  doc["config_digest"] = config_digest;
  Json in = Json::object();
  for (const auto& [label, digest] : inputs) in[label] = digest;
  doc["input_digests"] = in;
  Json metrics = Json::object();
  for (const auto& [metric, entry] : card.metrics) {
    Json e;
    // Serialized via shortest round-trip formatting; exact doubles survive.
    e["raw"] = entry.raw;
    e["score"] = entry.normalized;
    e["samples"] = entry.samples;
    metrics[to_string(metric)] = e;
  }
  doc["metrics"] = metrics;
  Json modules = Json::object();
  for (const auto& [module, total] : card.module_totals) {
    modules[to_string(module)] = total;
  }
  doc["modules"] = modules;
  doc["overall"] = card.overall;
  doc["judge_failures"] = card.judge_failures;
  return doc.dump(2) + "\n";
}

}  // namespace scenepilot
