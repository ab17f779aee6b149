#include "scenepilot/foreground.hpp"

#include "scenepilot/error.hpp"
#include "scenepilot/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scenepilot {

namespace {

constexpr double kRobustPercentile = 0.05;

bool valid_depth(double z) { return z > 0.0 && std::isfinite(z); }

// Directed separation: 5th percentile over a of the nearest-neighbor
// distance into b.
double directed_separation(const std::vector<Vec3>& a,
                           const std::vector<Vec3>& b) {
  std::vector<double> nearest;
  nearest.reserve(a.size());
  for (const Vec3& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& q : b) best = std::min(best, (p - q).norm());
    nearest.push_back(best);
  }
  return percentile(nearest, kRobustPercentile);
}

}  // namespace

PointSet foreground_points(const CameraFrame& frame,
                           const std::string& object_id, const BBox& bbox) {
  if (!frame.depth || frame.depth->empty()) {
    throw BenchError(Errc::empty_grid, "foreground extraction needs depth", 0,
                     "depth");
  }
  const DepthGrid& depth = *frame.depth;

  const int width = static_cast<int>(depth.width);
  const int height = static_cast<int>(depth.height);

  PointSet out;
  const auto lift = [&](int u, int v) {
    const double z =
        depth.at(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    if (!valid_depth(z)) return;
    out.points.push_back(backproject(frame.intrinsics, u, v, z));
  };

  const auto mask_it = frame.masks.find(object_id);
  if (mask_it != frame.masks.end()) {
    const MaskGrid& mask = mask_it->second;
    if (mask.width != depth.width || mask.height != depth.height) {
      throw BenchError(Errc::length_mismatch,
                       "mask dimensions must match the depth grid", 0, "mask");
    }
    out.source = ForegroundSource::mask;
    for (int v = 0; v < height; ++v) {
      for (int u = 0; u < width; ++u) {
        if (mask.at(static_cast<std::uint32_t>(u),
                    static_cast<std::uint32_t>(v))) {
          lift(u, v);
        }
      }
    }
  } else {
    out.source = ForegroundSource::bbox_fallback;
    const int u0 = std::max(0, static_cast<int>(std::floor(bbox.x_min * width)));
    const int u1 = std::min(width, static_cast<int>(std::ceil(bbox.x_max * width)));
    const int v0 = std::max(0, static_cast<int>(std::floor(bbox.y_min * height)));
    const int v1 = std::min(height, static_cast<int>(std::ceil(bbox.y_max * height)));
    for (int v = v0; v < v1; ++v) {
      for (int u = u0; u < u1; ++u) lift(u, v);
    }
  }
  if (out.points.empty()) {
    throw BenchError(Errc::empty_foreground,
                     "no foreground pixel carries valid depth", 0, object_id);
  }
  return out;
}

double median_depth(const PointSet& set) {
  std::vector<double> zs;
  zs.reserve(set.points.size());
  for (const Vec3& p : set.points) zs.push_back(p.z());
  return median(zs);
}

DistanceAzimuth ego_distance_azimuth(const PointSet& set,
                                     const ScaleEstimate& scale,
                                     const GeoConfig& cfg) {
  if (set.points.empty()) {
    throw BenchError(Errc::empty_foreground, "point set is empty");
  }
  std::vector<double> norms;
  norms.reserve(set.points.size());
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : set.points) {
    norms.push_back(p.norm());
    centroid += p;
  }
  centroid /= static_cast<double>(set.points.size());

  DistanceAzimuth out;
  out.distance_m =
      std::max(0.0, scale.scale * percentile(norms, kRobustPercentile));
  if (cfg.azimuth_mode == AzimuthMode::forward_axis) {
    out.azimuth_rad = std::clamp(std::atan2(centroid.x(), centroid.z()),
                                 -M_PI / 2.0, M_PI / 2.0);
  } else {
    out.azimuth_rad = std::atan2(centroid.y(), centroid.x());
  }
  return out;
}

double inter_agent_proximity(const PointSet& a, const PointSet& b,
                             const ScaleEstimate& scale_a,
                             const ScaleEstimate& scale_b) {
  if (a.points.empty() || b.points.empty()) {
    throw BenchError(Errc::empty_foreground,
                     "proximity needs two non-empty point sets");
  }
  const double d_ab = directed_separation(a.points, b.points);
  const double d_ba = directed_separation(b.points, a.points);
  const double mean_scale = 0.5 * (scale_a.scale + scale_b.scale);
  return mean_scale * std::min(d_ab, d_ba);
}

}  // namespace scenepilot
