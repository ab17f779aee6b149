#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace scenepilot {

// Percentile with linear interpolation between order statistics at rank
// h = (n - 1) * p. This is the one estimator used everywhere in the kit
// (ground-plane medians, robust distances, calibration quantiles).
// p must be in [0, 1]; data must be non-empty.
double percentile(std::span<const double> data, double p);

inline double median(std::span<const double> data) {
  return percentile(data, 0.5);
}

// median(|x - median(x)|), the robust spread used for inlier selection.
double median_abs_deviation(std::span<const double> data, double center);

double mean(std::span<const double> data);

// Two-level aggregation: mean within each clip, then an equally weighted
// mean over clips in ascending clip-id order. Clips with no values are
// absent from the map by construction. Empty map is the caller's error.
double clip_then_mean(const std::map<std::string, std::vector<double>>& by_clip);

}  // namespace scenepilot
