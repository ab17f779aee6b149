#pragma once

#include "scenepilot/camera.hpp"
#include "scenepilot/scale.hpp"
#include "scenepilot/types.hpp"

#include <cstdint>
#include <vector>

namespace scenepilot {

enum class ForegroundSource : std::uint8_t { mask, bbox_fallback };

// Camera-frame 3D points lifted from one detection's pixels.
struct PointSet {
  std::vector<Vec3> points;
  ForegroundSource source = ForegroundSource::mask;
};

// Back-projects every pixel of the object's mask that carries valid depth;
// without a mask the bbox rectangle acts as the mask. Throws
// BenchError(empty_grid) without depth, length_mismatch when mask and depth
// dimensions disagree, empty_foreground when no pixel survives.
PointSet foreground_points(const CameraFrame& frame,
                           const std::string& object_id, const BBox& bbox);

// Median z over the point set, the depth statistic the prior-scale branch
// consumes.
double median_depth(const PointSet& set);

struct DistanceAzimuth {
  double distance_m = 0.0;
  double azimuth_rad = 0.0;
};

// Robust range: 5th percentile of point norms, scaled to meters and floored
// at zero. Bearing from the centroid per cfg.azimuth_mode; forward_axis is
// lateral-over-forward clamped to [-pi/2, pi/2].
DistanceAzimuth ego_distance_azimuth(const PointSet& set,
                                     const ScaleEstimate& scale,
                                     const GeoConfig& cfg);

// Symmetric separation between two point sets in meters: the smaller of the
// two directed 5th-percentile nearest-neighbor distances, scaled by the mean
// of the two scale estimates.
double inter_agent_proximity(const PointSet& a, const PointSet& b,
                             const ScaleEstimate& scale_a,
                             const ScaleEstimate& scale_b);

}  // namespace scenepilot
