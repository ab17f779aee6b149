#pragma once

#include "scenepilot/camera.hpp"
#include "scenepilot/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>

namespace scenepilot {

// Tunables for the metric-scale recovery stage.
struct GeoConfig {
  double camera_height_m = 1.5;
  double mad_kappa = 2.5;
  int ground_grid_cols = 32;
  int ground_grid_rows = 16;
  int min_ground_inliers = 20;
  std::map<ParticipantClass, double> class_height_m = {
      {ParticipantClass::vehicle, 1.5},    {ParticipantClass::truck, 3.0},
      {ParticipantClass::bicycle, 1.1},    {ParticipantClass::motorcycle, 1.2},
      {ParticipantClass::pedestrian, 1.7},
  };
  AzimuthMode azimuth_mode = AzimuthMode::forward_axis;

  void validate() const;
};

enum class ScaleBranch : std::uint8_t { frame_ground, object_prior };

struct ScaleDiagnostics {
  int sample_count = 0;
  int inlier_count = 0;
  double median = 0.0;
  double mad = 0.0;
};

struct ScaleEstimate {
  double scale = 1.0;
  ScaleBranch branch = ScaleBranch::frame_ground;
  ScaleDiagnostics diag;
};

// Robust scale from camera heights above sampled ground patches. Inliers are
// the values within kappa * MAD of the median (MAD == 0 degrades to an exact
// match with 1e-9 slack); the estimate is kept only when enough inliers
// survive and their median is positive. When diag is non-null it is filled
// even for rejected estimates.
std::optional<ScaleEstimate> ground_scale_from_heights(
    std::span<const double> heights, const GeoConfig& cfg,
    ScaleDiagnostics* diag = nullptr);

// Samples the depth grid on a regular lattice over the lower image half,
// backprojects each valid sample, and feeds |y| to the robust estimator.
// Throws BenchError(empty_grid) when the frame has no depth grid.
std::optional<ScaleEstimate> frame_ground_scale(const CameraFrame& frame,
                                                const GeoConfig& cfg,
                                                ScaleDiagnostics* diag = nullptr);

// Fallback scale from a class height prior: H_class / ((h_px / fy) * mean_z).
// Throws BenchError(degenerate_box) when the box height or mean depth is not
// positive.
ScaleEstimate object_prior_scale(double class_height_m, double box_height_px,
                                 double fy, double mean_depth);

}  // namespace scenepilot
