#pragma once

#include "scenepilot/records.hpp"

#include <map>
#include <vector>

namespace scenepilot {

// One planned 10-frame clip: sampling instants plus the offset of the
// representative key frame (the 4th frame of the clip).
struct ClipPlan {
  std::size_t clip_index = 0;
  std::vector<double> frame_timestamps;  // exactly 10, 0.5 s spacing
  std::size_t key_frame_index = 3;       // offset within the clip

  double key_frame_timestamp() const { return frame_timestamps[key_frame_index]; }
};

// Per-class detection confidence thresholds, all in (0,1).
struct ThresholdTable {
  std::map<ParticipantClass, double> thresholds;

  // vehicle 0.5, truck 0.6, bicycle 0.4, motorcycle 0.55, pedestrian 0.55.
  static ThresholdTable defaults();
  void validate() const;
  double threshold_for(ParticipantClass cls) const;
};

// Plans non-overlapping 10-frame clips over the valid range of a video:
// the first and last trim_s seconds are removed, frames are sampled at
// sample_hz starting at t = trim_s, and a trailing partial clip is dropped.
// Throws BenchError(video_too_short) when no complete clip fits.
std::vector<ClipPlan> plan_clips(double duration_s, double trim_s = 180.0,
                                 double sample_hz = 2.0, double clip_len_s = 5.0);

// Keeps detections with confidence >= the class threshold; order preserved.
std::vector<DetectionRecord> filter_detections(
    const std::vector<DetectionRecord>& detections, const ThresholdTable& table);

}  // namespace scenepilot
