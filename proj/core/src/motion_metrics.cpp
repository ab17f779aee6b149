#include "scenepilot/motion_metrics.hpp"

#include "scenepilot/error.hpp"
#include "scenepilot/stats.hpp"

#include <cmath>
#include <map>

namespace scenepilot {

Kinematics kinematics(std::span<const Vec3> points,
                      std::span<const double> timestamps) {
  if (points.size() != timestamps.size()) {
    throw BenchError(Errc::length_mismatch,
                     "points and timestamps must align");
  }
  if (points.size() < 3) {
    throw BenchError(Errc::too_few_points,
                     "kinematics needs at least 3 points");
  }
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (!(timestamps[i] > timestamps[i - 1])) {
      throw BenchError(Errc::non_monotone_timestamps,
                       "timestamps must be strictly increasing");
    }
  }

  const std::size_t n = points.size();
  Kinematics k;
  k.speeds.reserve(n - 1);
  k.headings.reserve(n - 1);
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const Vec3 d = points[t + 1] - points[t];
    const double dt = timestamps[t + 1] - timestamps[t];
    k.speeds.push_back(d.norm() / dt);
    k.headings.push_back(std::atan2(d.z(), d.x()));
  }
  k.accelerations.reserve(n - 2);
  k.heading_changes.reserve(n - 2);
  for (std::size_t t = 0; t + 2 < n; ++t) {
    const double dt = timestamps[t + 1] - timestamps[t];
    k.accelerations.push_back((k.speeds[t + 1] - k.speeds[t]) / dt);
    k.heading_changes.push_back(wrap_angle(k.headings[t + 1] - k.headings[t]));
  }
  return k;
}

double MotionThresholds::heading_rad() const {
  return heading_deg * M_PI / 180.0;
}

void MotionThresholds::validate() const {
  if (!(accel_mps2 > 0.0) || !(heading_deg > 0.0)) {
    throw BenchError(Errc::config_error,
                     "motion thresholds must be positive");
  }
}

LongitudinalAction longitudinal_decision(double mean_accel,
                                         const MotionThresholds& thresholds) {
  if (mean_accel >= thresholds.accel_mps2) return LongitudinalAction::accelerating;
  if (mean_accel <= -thresholds.accel_mps2) return LongitudinalAction::braking;
  return LongitudinalAction::constant;
}

LateralAction lateral_decision(double net_heading_change_rad,
                               const MotionThresholds& thresholds) {
  const double thr = thresholds.heading_rad();
  if (net_heading_change_rad >= thr) return LateralAction::left_turn;
  if (net_heading_change_rad <= -thr) return LateralAction::right_turn;
  return LateralAction::straight;
}

MetaAction classify_meta_action(std::span<const Vec3> points,
                                std::span<const double> timestamps,
                                const MotionThresholds& thresholds) {
  const Kinematics k = kinematics(points, timestamps);
  const double mean_a = mean(k.accelerations);
  const double net = wrap_angle(k.headings.back() - k.headings.front());
  return {longitudinal_decision(mean_a, thresholds),
          lateral_decision(net, thresholds)};
}

double dcs_acc(std::span<const MetaActionSample> samples) {
  if (samples.empty()) {
    throw BenchError(Errc::empty_input, "consistency score needs samples");
  }
  std::map<std::string, std::vector<double>> by_clip;
  for (const MetaActionSample& s : samples) {
    by_clip[s.clip_id].push_back(s.predicted == s.ground_truth ? 1.0 : 0.0);
  }
  return clip_then_mean(by_clip);
}

double mre_acc(std::span<const MotionScalarSample> samples) {
  if (samples.empty()) {
    throw BenchError(Errc::empty_input, "acceleration error needs samples");
  }
  std::map<std::string, std::vector<double>> by_clip;
  for (const MotionScalarSample& s : samples) {
    if (s.ground_truth == 0.0) {
      throw BenchError(Errc::zero_gt_acceleration,
                       "reference acceleration must be nonzero", 0, s.clip_id);
    }
    by_clip[s.clip_id].push_back(std::abs(s.predicted - s.ground_truth) /
                                 std::abs(s.ground_truth));
  }
  return clip_then_mean(by_clip);
}

double are(std::span<const MotionScalarSample> samples,
           double angle_epsilon_rad) {
  if (samples.empty()) {
    throw BenchError(Errc::empty_input, "heading error needs samples");
  }
  std::map<std::string, std::vector<double>> by_clip;
  for (const MotionScalarSample& s : samples) {
    const double diff = std::abs(wrap_angle(s.predicted - s.ground_truth));
    by_clip[s.clip_id].push_back(
        diff / std::max(std::abs(s.ground_truth), angle_epsilon_rad));
  }
  return clip_then_mean(by_clip);
}

double ade(std::span<const Vec3> pred, std::span<const Vec3> gt) {
  if (pred.size() != gt.size() || pred.empty()) {
    throw BenchError(Errc::length_mismatch,
                     "trajectories must align and be non-empty");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    sum += (pred[i] - gt[i]).norm();
  }
  return sum / static_cast<double>(pred.size());
}

double fde_at(std::span<const Vec3> pred, std::span<const Vec3> gt,
              int horizon_s) {
  if (pred.size() != gt.size() || pred.empty()) {
    throw BenchError(Errc::length_mismatch,
                     "trajectories must align and be non-empty");
  }
  const std::size_t index = static_cast<std::size_t>(2 * horizon_s);
  if (horizon_s < 1 || index >= pred.size()) {
    throw BenchError(Errc::out_of_range,
                     "horizon exceeds the trajectory length");
  }
  return (pred[index] - gt[index]).norm();
}

}  // namespace scenepilot
