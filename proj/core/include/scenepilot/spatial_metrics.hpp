#pragma once

#include "scenepilot/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace scenepilot {

enum class SpatialKind : std::uint8_t {
  ego_dist,
  ego_angle,
  pair_dist,
  pair_angle,
};

// One predicted/reference scalar pair for a spatial question, tagged with the
// clip it came from.
struct SpatialSample {
  SpatialKind kind = SpatialKind::ego_dist;
  double predicted = 0.0;
  double ground_truth = 0.0;
  std::string clip_id;
};

struct AggregationPolicy {
  double angle_epsilon_rad = 0.01;  // floor for near-zero reference angles
};

// Test-set-wide accuracy over (predicted, reference) class pairs; this is
// the one spatial metric that is not clip-aggregated.
double class_acc(
    std::span<const std::pair<ParticipantClass, ParticipantClass>> pairs);

// Distances: |pred - gt| / gt. Angles: wrapped |pred - gt| over
// max(|gt|, epsilon). Throws BenchError(non_positive_gt_distance) when a
// distance reference is not positive.
double relative_error(const SpatialSample& sample,
                      const AggregationPolicy& policy);

struct AggregateResult {
  double value = 0.0;      // clip-mean of per-clip means
  double flat_mean = 0.0;  // pooled per-sample mean, diagnostic only
  int clip_count = 0;
  int sample_count = 0;
};

// Per-clip mean of relative errors, then an equal-weight mean over clips of
// the requested kind. Throws BenchError(no_samples) when nothing matches.
AggregateResult aggregate(std::span<const SpatialSample> samples,
                          SpatialKind kind, const AggregationPolicy& policy);

}  // namespace scenepilot
