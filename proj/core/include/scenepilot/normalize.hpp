#pragma once

#include "scenepilot/types.hpp"

#include <map>
#include <span>
#include <utility>

namespace scenepilot {

// Piecewise error-to-score curve: full credit below x1, linear 100 -> 60
// between x1 and x2, exponential decay with rate k beyond x2.
struct NormParams {
  double x1 = 0.0;
  double x2 = 0.0;
  double k = 0.0;

  void validate() const;  // 0 < x1 < x2, k > 0
};

// Stock parameters for every error-based metric.
std::map<MetricId, NormParams> default_norm_params();

// 100 * M for an accuracy in [0, 1].
double normalize_accuracy(double m);

// Maps a non-negative raw error into (0, 100].
double normalize_error(double error, const NormParams& p);

// Thresholds from a baseline error sample: x1 at the 15th percentile, x2 at
// the 75th. The decay rate is never derived here. Throws
// insufficient_samples below 2 values and degenerate_distribution when the
// two percentiles coincide.
std::pair<double, double> calibrate(std::span<const double> samples);

}  // namespace scenepilot
