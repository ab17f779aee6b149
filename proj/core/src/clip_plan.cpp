#include "scenepilot/clip_plan.hpp"

#include "scenepilot/error.hpp"

#include <cmath>

namespace scenepilot {

ThresholdTable ThresholdTable::defaults() {
  ThresholdTable t;
  t.thresholds = {
      {ParticipantClass::vehicle, 0.5},
      {ParticipantClass::truck, 0.6},
      {ParticipantClass::bicycle, 0.4},
      {ParticipantClass::motorcycle, 0.55},
      {ParticipantClass::pedestrian, 0.55},
  };
  return t;
}

void ThresholdTable::validate() const {
  for (ParticipantClass cls : kAllParticipantClasses) {
    const auto it = thresholds.find(cls);
    if (it == thresholds.end()) {
      throw BenchError(Errc::invariant_violation,
                       std::string("missing threshold for ") + to_string(cls),
                       0, "thresholds");
    }
    if (!(it->second > 0.0 && it->second < 1.0)) {
      throw BenchError(Errc::invariant_violation,
                       std::string("threshold for ") + to_string(cls) +
                           " must lie in (0,1)",
                       0, "thresholds");
    }
  }
}

double ThresholdTable::threshold_for(ParticipantClass cls) const {
  const auto it = thresholds.find(cls);
  if (it == thresholds.end()) {
    throw BenchError(Errc::invariant_violation,
                     std::string("missing threshold for ") + to_string(cls), 0,
                     "thresholds");
  }
  return it->second;
}

std::vector<ClipPlan> plan_clips(double duration_s, double trim_s,
                                 double sample_hz, double clip_len_s) {
  if (sample_hz <= 0.0 || clip_len_s <= 0.0 || trim_s < 0.0) {
    throw BenchError(Errc::config_error, "non-positive sampling parameters");
  }
  const std::size_t frames_per_clip =
      static_cast<std::size_t>(std::llround(sample_hz * clip_len_s));
  const double valid_len = duration_s - 2.0 * trim_s;
  // Frame count is floor(valid_len * hz); the epsilon keeps exact integer
  // products from landing one frame short.
  const double raw_frames = valid_len * sample_hz;
  const long long n_frames =
      raw_frames > 0.0 ? static_cast<long long>(std::floor(raw_frames + 1e-9)) : 0;
  const std::size_t n_clips =
      n_frames > 0 ? static_cast<std::size_t>(n_frames) / frames_per_clip : 0;
  if (n_clips == 0) {
    throw BenchError(Errc::video_too_short,
                     "valid range yields zero complete clips");
  }

  const double step = 1.0 / sample_hz;
  std::vector<ClipPlan> plans;
  plans.reserve(n_clips);
  for (std::size_t c = 0; c < n_clips; ++c) {
    ClipPlan plan;
    plan.clip_index = c;
    plan.key_frame_index = 3;  // 4th frame, 1-based
    plan.frame_timestamps.reserve(frames_per_clip);
    for (std::size_t f = 0; f < frames_per_clip; ++f) {
      const std::size_t k = c * frames_per_clip + f;
      plan.frame_timestamps.push_back(trim_s + static_cast<double>(k) * step);
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

std::vector<DetectionRecord> filter_detections(
    const std::vector<DetectionRecord>& detections, const ThresholdTable& table) {
  std::vector<DetectionRecord> kept;
  kept.reserve(detections.size());
  for (const DetectionRecord& det : detections) {
    if (det.confidence >= table.threshold_for(det.cls)) {
      kept.push_back(det);
    }
  }
  return kept;
}

}  // namespace scenepilot
