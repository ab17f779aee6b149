#include "scenepilot/evaluator.hpp"

#include "scenepilot/error.hpp"
#include "scenepilot/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace scenepilot {

namespace {

// Everything one clip contributes to the run, extracted independently of
// every other clip.
struct ClipSamples {
  std::vector<double> spice_f1;
  std::vector<std::pair<RiskClass, RiskClass>> risk_pairs;
  std::vector<std::pair<ParticipantClass, ParticipantClass>> class_pairs;
  std::vector<SpatialSample> spatial;
  std::vector<MetaActionSample> meta;
  std::vector<MotionScalarSample> accel_samples;
  std::vector<MotionScalarSample> heading_samples;
  std::vector<double> ade_values;
  std::vector<double> fde1_values;
  std::vector<double> fde2_values;
  std::vector<double> fde3_values;
  std::vector<double> judge_scores;
};

const ParticipantGT& find_participant(const ClipRecord& clip,
                                      const std::string& object_id) {
  for (const ParticipantGT& p : clip.participants) {
    if (p.object_id == object_id) return p;
  }
  throw BenchError(Errc::unknown_object_id,
                   "participant '" + object_id + "' not in clip '" +
                       clip.clip_id + "'");
}

std::vector<double> future_timestamps() {
  std::vector<double> ts(kFuturePoints);
  for (std::size_t i = 0; i < kFuturePoints; ++i) {
    ts[i] = static_cast<double>(i) * kFutureStepSeconds;
  }
  return ts;
}

void extract_clip(const ClipRecord& clip,
                  const std::vector<const PredictionRecord*>& preds,
                  const EvalConfig& cfg, ClipSamples& out) {
  const std::vector<double> ts = future_timestamps();
  for (const PredictionRecord* pred : preds) {
    switch (pred->task) {
      case Task::scene_desc: {
        const auto& text = std::get<TextPayload>(pred->value).text;
        out.spice_f1.push_back(
            spice(text, clip.scene_description, cfg.lexicon).f1);
        break;
      }
      case Task::risk: {
        out.risk_pairs.emplace_back(
            std::get<RiskPayload>(pred->value).risk,
            risk_class(clip.risk_score, cfg.risk_mapping));
        break;
      }
      case Task::participant_class: {
        if (!pred->target_id) {
          throw BenchError(Errc::task_payload_mismatch,
                           "participant_class prediction needs target_id", 0,
                           clip.clip_id);
        }
        const ParticipantGT& gt = find_participant(clip, *pred->target_id);
        out.class_pairs.emplace_back(std::get<ClassPayload>(pred->value).cls,
                                     gt.cls);
        break;
      }
      case Task::ego_distance:
      case Task::ego_angle: {
        if (!pred->target_id) {
          throw BenchError(Errc::task_payload_mismatch,
                           "ego-centric prediction needs target_id", 0,
                           clip.clip_id);
        }
        const ParticipantGT& gt = find_participant(clip, *pred->target_id);
        SpatialSample s;
        s.kind = pred->task == Task::ego_distance ? SpatialKind::ego_dist
                                                  : SpatialKind::ego_angle;
        s.predicted = std::get<ScalarPayload>(pred->value).value;
        s.ground_truth = pred->task == Task::ego_distance ? gt.distance_m
                                                          : gt.azimuth_rad;
        s.clip_id = clip.clip_id;
        out.spatial.push_back(s);
        break;
      }
      case Task::pair_distance:
      case Task::pair_angle: {
        const ParticipantGT& a = find_participant(clip, pred->pair_ids->first);
        const ParticipantGT& b = find_participant(clip, pred->pair_ids->second);
        SpatialSample s;
        s.kind = pred->task == Task::pair_distance ? SpatialKind::pair_dist
                                                   : SpatialKind::pair_angle;
        s.predicted = std::get<ScalarPayload>(pred->value).value;
        s.ground_truth = pred->task == Task::pair_distance
                             ? pair_distance_gt(a, b)
                             : pair_angle_gt(a, b);
        s.clip_id = clip.clip_id;
        out.spatial.push_back(s);
        break;
      }
      case Task::meta_action: {
        out.meta.push_back({std::get<MetaActionPayload>(pred->value).action,
                            clip.meta_action_gt, clip.clip_id});
        break;
      }
      case Task::trajectory: {
        const auto& points = std::get<TrajectoryPayload>(pred->value).points;
        const auto& gt = clip.future_trajectory;
        out.ade_values.push_back(ade(points, gt));
        out.fde1_values.push_back(fde_at(points, gt, 1));
        out.fde2_values.push_back(fde_at(points, gt, 2));
        out.fde3_values.push_back(fde_at(points, gt, 3));

        const Kinematics kp = kinematics(points, ts);
        const Kinematics kg = kinematics(gt, ts);
        out.accel_samples.push_back({mean(kp.accelerations),
                                     mean(kg.accelerations), clip.clip_id});
        out.heading_samples.push_back(
            {wrap_angle(kp.headings.back() - kp.headings.front()),
             wrap_angle(kg.headings.back() - kg.headings.front()),
             clip.clip_id});
        break;
      }
      case Task::free_qa:
        break;  // judged only
    }
    if (pred->judge_score) out.judge_scores.push_back(*pred->judge_score);
  }
}

void set_metric(ScoreCard& card, const EvalConfig& cfg, MetricId metric,
                double raw, std::size_t samples) {
  MetricEntry entry;
  entry.raw = raw;
  entry.samples = samples;
  entry.normalized = is_error_metric(metric)
                         ? normalize_error(raw, cfg.norm_params.at(metric))
                         : normalize_accuracy(raw);
  card.metrics[metric] = entry;
}

}  // namespace

void EvalConfig::validate() const {
  geo.validate();
  risk_mapping.validate();
  motion_thresholds.validate();
  if (!(aggregation.angle_epsilon_rad > 0.0)) {
    throw BenchError(Errc::config_error, "angle epsilon must be positive");
  }
  for (MetricId m : kAllMetrics) {
    if (!is_error_metric(m)) continue;
    const auto it = norm_params.find(m);
    if (it == norm_params.end()) {
      throw BenchError(Errc::config_error,
                       std::string("missing normalization parameters for ") +
                           to_string(m));
    }
    it->second.validate();
  }
  weights.validate();
  lexicon.validate();
}

double pair_distance_gt(const ParticipantGT& a, const ParticipantGT& b) {
  const double cosd = std::cos(a.azimuth_rad - b.azimuth_rad);
  const double sq = a.distance_m * a.distance_m +
                    b.distance_m * b.distance_m -
                    2.0 * a.distance_m * b.distance_m * cosd;
  return std::sqrt(std::max(0.0, sq));
}

double pair_angle_gt(const ParticipantGT& a, const ParticipantGT& b) {
  return wrap_angle(a.azimuth_rad - b.azimuth_rad);
}

ScoreCard evaluate(const std::vector<ClipRecord>& clips,
                   const std::vector<PredictionRecord>& predictions,
                   const EvalConfig& cfg, int jobs) {
  cfg.validate();

  // Canonical clip order: ascending clip_id.
  std::vector<std::size_t> order(clips.size());
  for (std::size_t i = 0; i < clips.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return clips[a].clip_id < clips[b].clip_id;
  });

  std::map<std::string, std::size_t> slot_of;
  for (std::size_t slot = 0; slot < order.size(); ++slot) {
    if (!slot_of.emplace(clips[order[slot]].clip_id, slot).second) {
      throw BenchError(Errc::duplicate_clip_id,
                       "duplicate clip_id: " + clips[order[slot]].clip_id);
    }
  }

  std::vector<std::vector<const PredictionRecord*>> preds_per_slot(
      order.size());
  for (const PredictionRecord& pred : predictions) {
    pred.validate();
    const auto it = slot_of.find(pred.clip_id);
    if (it == slot_of.end()) {
      throw BenchError(Errc::unknown_clip_id,
                       "prediction references unknown clip_id: " +
                           pred.clip_id);
    }
    preds_per_slot[it->second].push_back(&pred);
  }

  std::vector<ClipSamples> samples_per_slot(order.size());
  std::vector<std::exception_ptr> errors(order.size());
  const auto work = [&](std::size_t slot) {
    try {
      extract_clip(clips[order[slot]], preds_per_slot[slot], cfg,
                   samples_per_slot[slot]);
    } catch (...) {
      errors[slot] = std::current_exception();
    }
  };

  const int workers = std::max(
      1, std::min<int>(jobs, static_cast<int>(order.size())));
  if (workers <= 1) {
    for (std::size_t slot = 0; slot < order.size(); ++slot) work(slot);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t s = next.fetch_add(1); s < order.size();
             s = next.fetch_add(1)) {
          work(s);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  // First failure in canonical order wins, independent of scheduling.
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Sequential fold over clips in canonical order.
  std::map<std::string, std::vector<double>> spice_by_clip;
  std::vector<std::pair<RiskClass, RiskClass>> risk_pairs;
  std::vector<std::pair<ParticipantClass, ParticipantClass>> class_pairs;
  std::vector<SpatialSample> spatial;
  std::vector<MetaActionSample> meta;
  std::vector<MotionScalarSample> accel_samples;
  std::vector<MotionScalarSample> heading_samples;
  std::map<std::string, std::vector<double>> ade_by_clip, fde1_by_clip,
      fde2_by_clip, fde3_by_clip;
  std::vector<double> judge_scores;

  for (std::size_t slot = 0; slot < order.size(); ++slot) {
    const std::string& id = clips[order[slot]].clip_id;
    ClipSamples& s = samples_per_slot[slot];
    if (!s.spice_f1.empty()) spice_by_clip[id] = std::move(s.spice_f1);
    risk_pairs.insert(risk_pairs.end(), s.risk_pairs.begin(),
                      s.risk_pairs.end());
    class_pairs.insert(class_pairs.end(), s.class_pairs.begin(),
                       s.class_pairs.end());
    spatial.insert(spatial.end(), s.spatial.begin(), s.spatial.end());
    meta.insert(meta.end(), s.meta.begin(), s.meta.end());
    accel_samples.insert(accel_samples.end(), s.accel_samples.begin(),
                         s.accel_samples.end());
    heading_samples.insert(heading_samples.end(), s.heading_samples.begin(),
                           s.heading_samples.end());
    if (!s.ade_values.empty()) {
      ade_by_clip[id] = std::move(s.ade_values);
      fde1_by_clip[id] = std::move(s.fde1_values);
      fde2_by_clip[id] = std::move(s.fde2_values);
      fde3_by_clip[id] = std::move(s.fde3_values);
    }
    judge_scores.insert(judge_scores.end(), s.judge_scores.begin(),
                        s.judge_scores.end());
  }

  ScoreCard card;
  if (!spice_by_clip.empty()) {
    std::size_t n = 0;
    for (const auto& [_, v] : spice_by_clip) n += v.size();
    set_metric(card, cfg, MetricId::spice, clip_then_mean(spice_by_clip), n);
  }
  if (!risk_pairs.empty()) {
    set_metric(card, cfg, MetricId::risk_class_acc, risk_class_acc(risk_pairs),
               risk_pairs.size());
  }
  if (!class_pairs.empty()) {
    set_metric(card, cfg, MetricId::class_acc, class_acc(class_pairs),
               class_pairs.size());
  }
  const auto spatial_metric = [&](MetricId metric, SpatialKind kind) {
    const bool any = std::any_of(
        spatial.begin(), spatial.end(),
        [kind](const SpatialSample& s) { return s.kind == kind; });
    if (!any) return;
    const AggregateResult r = aggregate(spatial, kind, cfg.aggregation);
    set_metric(card, cfg, metric, r.value,
               static_cast<std::size_t>(r.sample_count));
  };
  spatial_metric(MetricId::emrde, SpatialKind::ego_dist);
  spatial_metric(MetricId::emrae, SpatialKind::ego_angle);
  spatial_metric(MetricId::omrde, SpatialKind::pair_dist);
  spatial_metric(MetricId::omrae, SpatialKind::pair_angle);
  if (!meta.empty()) {
    set_metric(card, cfg, MetricId::dcs_acc, dcs_acc(meta), meta.size());
  }
  if (!accel_samples.empty()) {
    set_metric(card, cfg, MetricId::mre_acc, mre_acc(accel_samples),
               accel_samples.size());
    set_metric(card, cfg, MetricId::are,
               are(heading_samples, cfg.aggregation.angle_epsilon_rad),
               heading_samples.size());
  }
  if (!ade_by_clip.empty()) {
    std::size_t n = 0;
    for (const auto& [_, v] : ade_by_clip) n += v.size();
    set_metric(card, cfg, MetricId::ade, clip_then_mean(ade_by_clip), n);
    set_metric(card, cfg, MetricId::fde1, clip_then_mean(fde1_by_clip), n);
    set_metric(card, cfg, MetricId::fde2, clip_then_mean(fde2_by_clip), n);
    set_metric(card, cfg, MetricId::fde3, clip_then_mean(fde3_by_clip), n);
  }
  if (!judge_scores.empty()) {
    set_metric(card, cfg, MetricId::gpt_alignment, mean(judge_scores),
               judge_scores.size());
  }

  aggregate_scorecard(card, cfg.weights);
  return card;
}

AnnotateResult annotate_frames(const std::vector<CameraFrame>& frames,
                               const std::vector<DetectionRecord>& detections,
                               const GeoConfig& cfg, bool with_pairs) {
  AnnotateResult result;
  const auto skip = [&result](const CameraFrame& frame,
                              const std::string& object_id,
                              const std::string& why) {
    result.skipped.push_back(frame.clip_id + " frame " +
                             std::to_string(frame.frame_index) + " object " +
                             object_id + ": " + why);
  };

  for (const CameraFrame& frame : frames) {
    frame.intrinsics.validate();
    frame.pose.validate();

    std::optional<ScaleEstimate> frame_scale;
    ScaleDiagnostics frame_diag;
    bool have_depth = frame.depth && !frame.depth->empty();
    if (have_depth) {
      frame_scale = frame_ground_scale(frame, cfg, &frame_diag);
    }

    struct Lifted {
      const DetectionRecord* det;
      PointSet points;
      ScaleEstimate scale;
    };
    std::vector<Lifted> lifted;

    for (const DetectionRecord& det : detections) {
      if (det.frame_index != frame.frame_index) continue;
      if (!det.clip_id.empty() && det.clip_id != frame.clip_id) continue;
      if (!have_depth) {
        skip(frame, det.object_id, "no depth grid");
        continue;
      }
      PointSet points;
      try {
        points = foreground_points(frame, det.object_id, det.bbox);
      } catch (const BenchError& e) {
        skip(frame, det.object_id, e.what());
        continue;
      }
      ScaleEstimate scale;
      if (frame_scale) {
        scale = *frame_scale;
      } else {
        try {
          const double box_px =
              (det.bbox.y_max - det.bbox.y_min) * frame.depth->height;
          scale = object_prior_scale(cfg.class_height_m.at(det.cls), box_px,
                                     frame.intrinsics.fy,
                                     median_depth(points));
          scale.diag = frame_diag;  // carries why the frame branch failed
        } catch (const BenchError& e) {
          skip(frame, det.object_id, e.what());
          continue;
        }
      }
      const DistanceAzimuth da = ego_distance_azimuth(points, scale, cfg);
      GeoAnnotation ann;
      ann.clip_id = frame.clip_id;
      ann.frame_index = frame.frame_index;
      ann.object_id = det.object_id;
      ann.cls = det.cls;
      ann.bbox = det.bbox;
      ann.distance_m = da.distance_m;
      ann.azimuth_rad = da.azimuth_rad;
      ann.scale_branch = scale.branch;
      ann.scale_diag = scale.diag;
      ann.source = points.source;
      result.annotations.push_back(ann);
      if (with_pairs) lifted.push_back({&det, std::move(points), scale});
    }

    if (with_pairs) {
      for (std::size_t i = 0; i < lifted.size(); ++i) {
        for (std::size_t j = i + 1; j < lifted.size(); ++j) {
          PairProximity pp;
          pp.clip_id = frame.clip_id;
          pp.frame_index = frame.frame_index;
          pp.object_a = lifted[i].det->object_id;
          pp.object_b = lifted[j].det->object_id;
          pp.proximity_m =
              inter_agent_proximity(lifted[i].points, lifted[j].points,
                                    lifted[i].scale, lifted[j].scale);
          result.pairs.push_back(pp);
        }
      }
    }
  }
  return result;
}

}  // namespace scenepilot
