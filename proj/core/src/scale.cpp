#include "scenepilot/scale.hpp"

#include "scenepilot/error.hpp"
#include "scenepilot/stats.hpp"

#include <cmath>
#include <vector>

namespace scenepilot {

void GeoConfig::validate() const {
  const auto bad = [](const std::string& what) {
    throw BenchError(Errc::config_error, what);
  };
  if (!(camera_height_m > 0.0)) bad("camera_height_m must be positive");
  if (!(mad_kappa > 0.0)) bad("mad_kappa must be positive");
  if (ground_grid_cols < 1 || ground_grid_rows < 1) {
    bad("ground grid must have at least one row and column");
  }
  if (min_ground_inliers < 1) bad("min_ground_inliers must be >= 1");
  for (ParticipantClass c : kAllParticipantClasses) {
    auto it = class_height_m.find(c);
    if (it == class_height_m.end() || !(it->second > 0.0)) {
      bad(std::string("class height missing or non-positive for ") +
          to_string(c));
    }
  }
}

std::optional<ScaleEstimate> ground_scale_from_heights(
    std::span<const double> heights, const GeoConfig& cfg,
    ScaleDiagnostics* diag) {
  ScaleDiagnostics d;
  d.sample_count = static_cast<int>(heights.size());
  if (diag) *diag = d;
  if (heights.empty()) return std::nullopt;

  const double m = median(heights);
  const double mad = median_abs_deviation(heights, m);
  const double tol = mad > 0.0 ? cfg.mad_kappa * mad : 1e-9;

  std::vector<double> inliers;
  inliers.reserve(heights.size());
  for (double h : heights) {
    if (std::abs(h - m) <= tol) inliers.push_back(h);
  }
  d.inlier_count = static_cast<int>(inliers.size());
  d.median = m;
  d.mad = mad;
  if (diag) *diag = d;

  if (d.inlier_count < cfg.min_ground_inliers) return std::nullopt;
  const double inlier_median = median(inliers);
  if (!(inlier_median > 0.0)) return std::nullopt;

  ScaleEstimate est;
  est.scale = cfg.camera_height_m / inlier_median;
  est.branch = ScaleBranch::frame_ground;
  est.diag = d;
  return est;
}

std::optional<ScaleEstimate> frame_ground_scale(const CameraFrame& frame,
                                                const GeoConfig& cfg,
                                                ScaleDiagnostics* diag) {
  if (!frame.depth || frame.depth->empty()) {
    throw BenchError(Errc::empty_grid, "frame has no depth grid", 0, "depth");
  }
  const DepthGrid& grid = *frame.depth;
  const double w = static_cast<double>(grid.width);
  const double h = static_cast<double>(grid.height);

  std::vector<double> heights;
  heights.reserve(static_cast<std::size_t>(cfg.ground_grid_cols) *
                  static_cast<std::size_t>(cfg.ground_grid_rows));
  for (int r = 0; r < cfg.ground_grid_rows; ++r) {
    for (int c = 0; c < cfg.ground_grid_cols; ++c) {
      const double u = (c + 0.5) * w / cfg.ground_grid_cols;
      const double v = h / 2.0 + (r + 0.5) * (h / 2.0) / cfg.ground_grid_rows;
      const auto ui = static_cast<std::uint32_t>(
          std::min(w - 1.0, std::max(0.0, u)));
      const auto vi = static_cast<std::uint32_t>(
          std::min(h - 1.0, std::max(0.0, v)));
      const double z = grid.at(ui, vi);
      if (!(z > 0.0) || !std::isfinite(z)) continue;
      const Vec3 p = backproject(frame.intrinsics, u, v, z);
      heights.push_back(std::abs(p.y()));
    }
  }
  return ground_scale_from_heights(heights, cfg, diag);
}

ScaleEstimate object_prior_scale(double class_height_m, double box_height_px,
                                 double fy, double mean_depth) {
  if (!(box_height_px > 0.0) || !(mean_depth > 0.0)) {
    throw BenchError(Errc::degenerate_box,
                     "object prior needs positive box height and mean depth");
  }
  const double apparent_height_m = (box_height_px / fy) * mean_depth;
  ScaleEstimate est;
  est.scale = class_height_m / apparent_height_m;
  est.branch = ScaleBranch::object_prior;
  return est;
}

}  // namespace scenepilot
