#include "scenepilot/spatial_metrics.hpp"

#include "scenepilot/error.hpp"
#include "scenepilot/stats.hpp"

#include <cmath>
#include <map>

namespace scenepilot {

double class_acc(
    std::span<const std::pair<ParticipantClass, ParticipantClass>> pairs) {
  if (pairs.empty()) {
    throw BenchError(Errc::empty_input,
                     "class accuracy needs at least one pair");
  }
  std::size_t hits = 0;
  for (const auto& [pred, gt] : pairs) hits += pred == gt;
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

double relative_error(const SpatialSample& sample,
                      const AggregationPolicy& policy) {
  switch (sample.kind) {
    case SpatialKind::ego_dist:
    case SpatialKind::pair_dist: {
      if (!(sample.ground_truth > 0.0)) {
        throw BenchError(Errc::non_positive_gt_distance,
                         "distance reference must be positive", 0,
                         sample.clip_id);
      }
      return std::abs(sample.predicted - sample.ground_truth) /
             sample.ground_truth;
    }
    case SpatialKind::ego_angle:
    case SpatialKind::pair_angle: {
      const double diff =
          std::abs(wrap_angle(sample.predicted - sample.ground_truth));
      return diff / std::max(std::abs(sample.ground_truth),
                             policy.angle_epsilon_rad);
    }
  }
  return 0.0;
}

AggregateResult aggregate(std::span<const SpatialSample> samples,
                          SpatialKind kind, const AggregationPolicy& policy) {
  std::map<std::string, std::vector<double>> by_clip;
  double pooled = 0.0;
  int count = 0;
  for (const SpatialSample& s : samples) {
    if (s.kind != kind) continue;
    const double err = relative_error(s, policy);
    by_clip[s.clip_id].push_back(err);
    pooled += err;
    ++count;
  }
  if (by_clip.empty()) {
    throw BenchError(Errc::no_samples, "no samples of the requested kind");
  }
  AggregateResult out;
  out.value = clip_then_mean(by_clip);
  out.flat_mean = pooled / static_cast<double>(count);
  out.clip_count = static_cast<int>(by_clip.size());
  out.sample_count = count;
  return out;
}

}  // namespace scenepilot
