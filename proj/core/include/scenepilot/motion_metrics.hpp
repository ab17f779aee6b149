#pragma once

#include "scenepilot/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace scenepilot {

// Finite-difference kinematics of an n-point trajectory: n-1 speeds and
// headings, n-2 accelerations and heading changes.
struct Kinematics {
  std::vector<double> speeds;           // m/s, 3D displacement over dt
  std::vector<double> accelerations;    // m/s^2
  std::vector<double> headings;         // rad, atan2(dz, dx)
  std::vector<double> heading_changes;  // rad, wrapped to (-pi, pi]
};

// Throws BenchError(too_few_points) under 3 points, length_mismatch when
// points and timestamps disagree, non_monotone_timestamps otherwise.
Kinematics kinematics(std::span<const Vec3> points,
                      std::span<const double> timestamps);

struct MotionThresholds {
  double accel_mps2 = 0.15;
  double heading_deg = 8.0;

  double heading_rad() const;
  void validate() const;  // both thresholds positive
};

// Threshold decisions exposed separately so boundary values can be pinned
// down exactly: at the threshold the moving label wins.
LongitudinalAction longitudinal_decision(double mean_accel,
                                         const MotionThresholds& thresholds);
LateralAction lateral_decision(double net_heading_change_rad,
                               const MotionThresholds& thresholds);

// Longitudinal label from the mean acceleration over the horizon, lateral
// from the wrapped net heading change first-to-last.
MetaAction classify_meta_action(std::span<const Vec3> points,
                                std::span<const double> timestamps,
                                const MotionThresholds& thresholds);

struct MetaActionSample {
  MetaAction predicted;
  MetaAction ground_truth;
  std::string clip_id;
};

// Exact-pair indicator (both components must match), clip-then-mean.
double dcs_acc(std::span<const MetaActionSample> samples);

struct MotionScalarSample {
  double predicted = 0.0;
  double ground_truth = 0.0;
  std::string clip_id;
};

// |pred - gt| / |gt| over mean accelerations, clip-then-mean. A zero
// reference acceleration is a data error.
double mre_acc(std::span<const MotionScalarSample> samples);

// Wrapped |pred - gt| / max(|gt|, epsilon) over net heading changes,
// clip-then-mean.
double are(std::span<const MotionScalarSample> samples,
           double angle_epsilon_rad = 0.01);

// Mean pointwise Euclidean distance between aligned trajectories.
double ade(std::span<const Vec3> pred, std::span<const Vec3> gt);

// Displacement at the point horizon_s seconds out; points are 0.5 s apart
// with index 0 at t = 0, so the lookup index is 2 * horizon_s.
double fde_at(std::span<const Vec3> pred, std::span<const Vec3> gt,
              int horizon_s);

}  // namespace scenepilot
