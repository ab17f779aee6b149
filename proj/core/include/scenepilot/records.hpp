#pragma once

#include "scenepilot/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace scenepilot {

inline constexpr std::size_t kFramesPerClip = 10;
inline constexpr std::size_t kFuturePoints = 7;
inline constexpr double kFutureStepSeconds = 0.5;

// One annotated key participant of a clip: class, normalized box, and the
// ego-centric distance/azimuth it was annotated with.
struct ParticipantGT {
  std::string object_id;
  ParticipantClass cls = ParticipantClass::vehicle;
  BBox bbox;
  double distance_m = 0.0;
  double azimuth_rad = 0.0;
};

// Ground truth for one 10-frame clip.
struct ClipRecord {
  std::string clip_id;
  std::string country;  // ISO-3166 alpha-2
  TrafficSide traffic_side = TrafficSide::right;
  std::vector<double> timestamps;       // exactly 10, strictly increasing
  std::string scene_description;
  int risk_score = 1;                   // 1..5 as annotated
  std::vector<ParticipantGT> participants;
  std::vector<Vec3> ego_trajectory;     // exactly 10 points
  std::vector<Vec3> future_trajectory;  // exactly 7 points at 0.5 s spacing
  MetaAction meta_action_gt;

  // Throws BenchError(invariant_violation) naming the offending field.
  void validate() const;
};

// Task-tagged payloads of a model answer.
struct TextPayload {
  std::string text;
};
struct RiskPayload {
  RiskClass risk = RiskClass::low;
};
struct ClassPayload {
  ParticipantClass cls = ParticipantClass::vehicle;
};
struct ScalarPayload {
  double value = 0.0;
};
struct MetaActionPayload {
  MetaAction action;
};
struct TrajectoryPayload {
  std::vector<Vec3> points;  // exactly 7
};

using PredictionValue =
    std::variant<TextPayload, RiskPayload, ClassPayload, ScalarPayload,
                 MetaActionPayload, TrajectoryPayload>;

// One model answer for one clip and one task.
struct PredictionRecord {
  std::string clip_id;
  Task task = Task::scene_desc;
  std::optional<std::string> target_id;                       // single-object tasks
  std::optional<std::pair<std::string, std::string>> pair_ids;  // pairwise tasks
  PredictionValue value;
  // Pre-computed judge alignment in [0,1]; lets the judge module score
  // offline without a transport.
  std::optional<double> judge_score;

  void validate() const;
};

// One filtered 2D detection.
struct DetectionRecord {
  std::string object_id;
  int frame_index = 0;  // 0..9 within the clip
  ParticipantClass cls = ParticipantClass::vehicle;
  double confidence = 0.0;  // [0,1]
  BBox bbox;
  std::string clip_id;  // optional grouping key; empty when per-clip files are used

  void validate() const;
};

struct MetricEntry {
  double raw = 0.0;         // metric value before normalization
  double normalized = 0.0;  // score in (0,100] / [0,100]
  std::size_t samples = 0;
};

// Full per-run result: raw metric values, normalized scores, module totals
// and the weighted overall score.
struct ScoreCard {
  std::map<MetricId, MetricEntry> metrics;
  std::map<ModuleId, double> module_totals;
  double overall = 0.0;
  std::size_t judge_failures = 0;  // judge samples that exhausted retries
};

}  // namespace scenepilot
