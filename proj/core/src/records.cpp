#include "scenepilot/records.hpp"

#include "scenepilot/error.hpp"

#include <cmath>

namespace scenepilot {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw BenchError(Errc::invariant_violation, what, 0, field);
}

void check_bbox(const BBox& b, const std::string& field) {
  if (!b.valid()) {
    fail(field, "bbox must satisfy 0 <= min < max <= 1 on both axes");
  }
}

void check_finite(const Vec3& p, const std::string& field) {
  if (!p.allFinite()) fail(field, "non-finite coordinate");
}

}  // namespace

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::malformed_line: return "malformed_line";
    case Errc::invariant_violation: return "invariant_violation";
    case Errc::duplicate_clip_id: return "duplicate_clip_id";
    case Errc::task_payload_mismatch: return "task_payload_mismatch";
    case Errc::unknown_task: return "unknown_task";
    case Errc::bad_magic: return "bad_magic";
    case Errc::truncated_payload: return "truncated_payload";
    case Errc::dimension_overflow: return "dimension_overflow";
    case Errc::video_too_short: return "video_too_short";
    case Errc::non_orthonormal_rotation: return "non_orthonormal_rotation";
    case Errc::non_positive_depth: return "non_positive_depth";
    case Errc::empty_grid: return "empty_grid";
    case Errc::degenerate_box: return "degenerate_box";
    case Errc::empty_foreground: return "empty_foreground";
    case Errc::score_out_of_range: return "score_out_of_range";
    case Errc::empty_input: return "empty_input";
    case Errc::non_positive_gt_distance: return "non_positive_gt_distance";
    case Errc::no_samples: return "no_samples";
    case Errc::non_monotone_timestamps: return "non_monotone_timestamps";
    case Errc::too_few_points: return "too_few_points";
    case Errc::zero_gt_acceleration: return "zero_gt_acceleration";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::out_of_range: return "out_of_range";
    case Errc::negative_error: return "negative_error";
    case Errc::insufficient_samples: return "insufficient_samples";
    case Errc::degenerate_distribution: return "degenerate_distribution";
    case Errc::missing_metric: return "missing_metric";
    case Errc::unmapped_country: return "unmapped_country";
    case Errc::no_number_found: return "no_number_found";
    case Errc::judge_range: return "judge_range";
    case Errc::all_samples_failed: return "all_samples_failed";
    case Errc::unknown_clip_id: return "unknown_clip_id";
    case Errc::unknown_object_id: return "unknown_object_id";
    case Errc::io_error: return "io_error";
    case Errc::config_error: return "config_error";
  }
  return "unknown";
}

const char* to_string(ParticipantClass c) {
  switch (c) {
    case ParticipantClass::vehicle: return "vehicle";
    case ParticipantClass::truck: return "truck";
    case ParticipantClass::bicycle: return "bicycle";
    case ParticipantClass::motorcycle: return "motorcycle";
    case ParticipantClass::pedestrian: return "pedestrian";
  }
  return "?";
}

std::optional<ParticipantClass> participant_class_from_string(const std::string& s) {
  for (ParticipantClass c : kAllParticipantClasses) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

const char* to_string(TrafficSide s) {
  return s == TrafficSide::right ? "right" : "left";
}

std::optional<TrafficSide> traffic_side_from_string(const std::string& s) {
  if (s == "right") return TrafficSide::right;
  if (s == "left") return TrafficSide::left;
  return std::nullopt;
}

const char* to_string(RiskClass c) {
  switch (c) {
    case RiskClass::low: return "low";
    case RiskClass::medium: return "medium";
    case RiskClass::high: return "high";
  }
  return "?";
}

std::optional<RiskClass> risk_class_from_string(const std::string& s) {
  if (s == "low") return RiskClass::low;
  if (s == "medium") return RiskClass::medium;
  if (s == "high") return RiskClass::high;
  return std::nullopt;
}

const char* to_string(LongitudinalAction a) {
  switch (a) {
    case LongitudinalAction::accelerating: return "accelerating";
    case LongitudinalAction::braking: return "braking";
    case LongitudinalAction::constant: return "constant";
  }
  return "?";
}

const char* to_string(LateralAction a) {
  switch (a) {
    case LateralAction::left_turn: return "left_turn";
    case LateralAction::right_turn: return "right_turn";
    case LateralAction::straight: return "straight";
  }
  return "?";
}

std::optional<LongitudinalAction> longitudinal_from_string(const std::string& s) {
  if (s == "accelerating") return LongitudinalAction::accelerating;
  if (s == "braking") return LongitudinalAction::braking;
  if (s == "constant") return LongitudinalAction::constant;
  return std::nullopt;
}

std::optional<LateralAction> lateral_from_string(const std::string& s) {
  if (s == "left_turn") return LateralAction::left_turn;
  if (s == "right_turn") return LateralAction::right_turn;
  if (s == "straight") return LateralAction::straight;
  return std::nullopt;
}

const char* to_string(Task t) {
  switch (t) {
    case Task::scene_desc: return "scene_desc";
    case Task::risk: return "risk";
    case Task::participant_class: return "participant_class";
    case Task::ego_distance: return "ego_distance";
    case Task::ego_angle: return "ego_angle";
    case Task::pair_distance: return "pair_distance";
    case Task::pair_angle: return "pair_angle";
    case Task::meta_action: return "meta_action";
    case Task::trajectory: return "trajectory";
    case Task::free_qa: return "free_qa";
  }
  return "?";
}

std::optional<Task> task_from_string(const std::string& s) {
  static const Task all[] = {
      Task::scene_desc, Task::risk,          Task::participant_class,
      Task::ego_distance, Task::ego_angle,   Task::pair_distance,
      Task::pair_angle, Task::meta_action,   Task::trajectory,
      Task::free_qa,
  };
  for (Task t : all) {
    if (s == to_string(t)) return t;
  }
  return std::nullopt;
}

const char* to_string(MetricId m) {
  switch (m) {
    case MetricId::spice: return "spice";
    case MetricId::risk_class_acc: return "risk_class_acc";
    case MetricId::class_acc: return "class_acc";
    case MetricId::emrde: return "emrde";
    case MetricId::emrae: return "emrae";
    case MetricId::omrde: return "omrde";
    case MetricId::omrae: return "omrae";
    case MetricId::dcs_acc: return "dcs_acc";
    case MetricId::mre_acc: return "mre_acc";
    case MetricId::are: return "are";
    case MetricId::ade: return "ade";
    case MetricId::fde1: return "fde1";
    case MetricId::fde2: return "fde2";
    case MetricId::fde3: return "fde3";
    case MetricId::gpt_alignment: return "gpt_alignment";
  }
  return "?";
}

std::optional<MetricId> metric_from_string(const std::string& s) {
  for (MetricId m : kAllMetrics) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

bool is_error_metric(MetricId m) {
  switch (m) {
    case MetricId::emrde:
    case MetricId::emrae:
    case MetricId::omrde:
    case MetricId::omrae:
    case MetricId::mre_acc:
    case MetricId::are:
    case MetricId::ade:
    case MetricId::fde1:
    case MetricId::fde2:
    case MetricId::fde3:
      return true;
    default:
      return false;
  }
}

const char* to_string(AzimuthMode m) {
  return m == AzimuthMode::forward_axis ? "forward_axis" : "literal_xy";
}

std::optional<AzimuthMode> azimuth_mode_from_string(const std::string& s) {
  if (s == "forward_axis") return AzimuthMode::forward_axis;
  if (s == "literal_xy") return AzimuthMode::literal_xy;
  return std::nullopt;
}

const char* to_string(ModuleId m) {
  switch (m) {
    case ModuleId::scene: return "scene_understanding";
    case ModuleId::spatial: return "spatial_perception";
    case ModuleId::motion: return "motion_planning";
    case ModuleId::gpt: return "gpt_score";
  }
  return "?";
}

ModuleId module_of(MetricId m) {
  switch (m) {
    case MetricId::spice:
    case MetricId::risk_class_acc:
      return ModuleId::scene;
    case MetricId::class_acc:
    case MetricId::emrde:
    case MetricId::emrae:
    case MetricId::omrde:
    case MetricId::omrae:
      return ModuleId::spatial;
    case MetricId::dcs_acc:
    case MetricId::mre_acc:
    case MetricId::are:
    case MetricId::ade:
    case MetricId::fde1:
    case MetricId::fde2:
    case MetricId::fde3:
      return ModuleId::motion;
    case MetricId::gpt_alignment:
      return ModuleId::gpt;
  }
  return ModuleId::gpt;
}

double wrap_angle(double radians) {
  const double two_pi = 2.0 * M_PI;
  double a = std::fmod(radians, two_pi);
  if (a <= -M_PI) a += two_pi;
  if (a > M_PI) a -= two_pi;
  return a;
}

void ClipRecord::validate() const {
  if (clip_id.empty()) fail("clip_id", "clip_id must be non-empty");
  if (country.size() != 2) fail("country", "country must be ISO-3166 alpha-2");
  if (timestamps.size() != kFramesPerClip) {
    fail("timestamps", "exactly 10 timestamps required");
  }
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (!(timestamps[i] > timestamps[i - 1])) {
      fail("timestamps", "timestamps must be strictly increasing");
    }
  }
  if (risk_score < 1 || risk_score > 5) {
    fail("risk_score", "risk_score must lie in {1,...,5}");
  }
  if (ego_trajectory.size() != kFramesPerClip) {
    fail("ego_trajectory", "exactly 10 trajectory points required");
  }
  if (future_trajectory.size() != kFuturePoints) {
    fail("future_trajectory", "exactly 7 future points required");
  }
  for (const Vec3& p : ego_trajectory) check_finite(p, "ego_trajectory");
  for (const Vec3& p : future_trajectory) check_finite(p, "future_trajectory");
  for (const ParticipantGT& gt : participants) {
    if (gt.object_id.empty()) fail("participants.object_id", "object_id must be non-empty");
    check_bbox(gt.bbox, "participants.bbox");
    if (!(gt.distance_m >= 0.0)) fail("participants.distance_m", "distance must be >= 0");
    if (!std::isfinite(gt.azimuth_rad)) fail("participants.azimuth_rad", "non-finite azimuth");
  }
}

void PredictionRecord::validate() const {
  if (clip_id.empty()) fail("clip_id", "clip_id must be non-empty");
  const auto mismatch = [&]() {
    throw BenchError(Errc::task_payload_mismatch,
                     std::string("payload does not match task ") + to_string(task));
  };
  switch (task) {
    case Task::scene_desc:
    case Task::free_qa:
      if (!std::holds_alternative<TextPayload>(value)) mismatch();
      break;
    case Task::risk:
      if (!std::holds_alternative<RiskPayload>(value)) mismatch();
      break;
    case Task::participant_class:
      if (!std::holds_alternative<ClassPayload>(value)) mismatch();
      break;
    case Task::ego_distance:
    case Task::ego_angle:
      if (!std::holds_alternative<ScalarPayload>(value)) mismatch();
      break;
    case Task::pair_distance:
    case Task::pair_angle:
      if (!std::holds_alternative<ScalarPayload>(value)) mismatch();
      if (!pair_ids) {
        throw BenchError(Errc::task_payload_mismatch,
                         "pairwise task requires pair_ids");
      }
      break;
    case Task::meta_action:
      if (!std::holds_alternative<MetaActionPayload>(value)) mismatch();
      break;
    case Task::trajectory: {
      if (!std::holds_alternative<TrajectoryPayload>(value)) mismatch();
      const auto& traj = std::get<TrajectoryPayload>(value);
      if (traj.points.size() != kFuturePoints) {
        throw BenchError(Errc::task_payload_mismatch,
                         "trajectory payload must carry exactly 7 points");
      }
      break;
    }
  }
  if (judge_score && (*judge_score < 0.0 || *judge_score > 1.0)) {
    fail("judge_score", "judge_score must lie in [0,1]");
  }
}

void DetectionRecord::validate() const {
  if (object_id.empty()) fail("object_id", "object_id must be non-empty");
  if (frame_index < 0 || frame_index >= static_cast<int>(kFramesPerClip)) {
    fail("frame_index", "frame_index must lie in 0..9");
  }
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    fail("confidence", "confidence must lie in [0,1]");
  }
  check_bbox(bbox, "bbox");
}

}  // namespace scenepilot
