#pragma once

#include "scenepilot/camera.hpp"
#include "scenepilot/foreground.hpp"
#include "scenepilot/lexicon.hpp"
#include "scenepilot/motion_metrics.hpp"
#include "scenepilot/normalize.hpp"
#include "scenepilot/records.hpp"
#include "scenepilot/scale.hpp"
#include "scenepilot/scene_semantics.hpp"
#include "scenepilot/scorecard.hpp"
#include "scenepilot/spatial_metrics.hpp"

#include <map>
#include <string>
#include <vector>

namespace scenepilot {

// Everything a scoring run needs besides the data itself. Defaults are the
// stock parameters; validate() is the single fail-fast gate.
struct EvalConfig {
  GeoConfig geo;
  RiskMapping risk_mapping;
  MotionThresholds motion_thresholds;
  AggregationPolicy aggregation;
  std::map<MetricId, NormParams> norm_params = default_norm_params();
  WeightTable weights = WeightTable::defaults();
  Lexicon lexicon = Lexicon::builtin();

  void validate() const;
};

// Reference separation / bearing difference for a participant pair, derived
// from their ego-centric polar coordinates in the same frame.
double pair_distance_gt(const ParticipantGT& a, const ParticipantGT& b);
double pair_angle_gt(const ParticipantGT& a, const ParticipantGT& b);

// Scores a prediction set against ground truth. Deterministic for any jobs
// value: per-clip work is parallel, aggregation runs in ascending clip-id
// order. Predictions referencing unknown clips or participants fail with
// unknown_clip_id / unknown_object_id naming the offender.
ScoreCard evaluate(const std::vector<ClipRecord>& clips,
                   const std::vector<PredictionRecord>& predictions,
                   const EvalConfig& cfg, int jobs = 1);

// One annotated detection out of the geometry stage.
struct GeoAnnotation {
  std::string clip_id;
  int frame_index = 0;
  std::string object_id;
  ParticipantClass cls = ParticipantClass::vehicle;
  BBox bbox;
  double distance_m = 0.0;
  double azimuth_rad = 0.0;
  ScaleBranch scale_branch = ScaleBranch::frame_ground;
  ScaleDiagnostics scale_diag;
  ForegroundSource source = ForegroundSource::mask;
};

struct PairProximity {
  std::string clip_id;
  int frame_index = 0;
  std::string object_a;
  std::string object_b;
  double proximity_m = 0.0;
};

struct AnnotateResult {
  std::vector<GeoAnnotation> annotations;
  std::vector<PairProximity> pairs;
  std::vector<std::string> skipped;  // human-readable per-detection reasons
};

// Runs the scale/lift/measure chain over one clip's frames. Detections are
// matched to frames by frame_index (their clip_id, when set, must agree).
// Unusable detections are skipped with a reason, never fatal.
AnnotateResult annotate_frames(const std::vector<CameraFrame>& frames,
                               const std::vector<DetectionRecord>& detections,
                               const GeoConfig& cfg, bool with_pairs);

}  // namespace scenepilot
