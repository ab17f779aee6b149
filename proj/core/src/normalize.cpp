#include "scenepilot/normalize.hpp"

#include "scenepilot/error.hpp"
#include "scenepilot/stats.hpp"

#include <cmath>

namespace scenepilot {

void NormParams::validate() const {
  if (!(0.0 < x1 && x1 < x2) || !(k > 0.0)) {
    throw BenchError(Errc::config_error,
                     "normalization needs 0 < x1 < x2 and k > 0");
  }
}

std::map<MetricId, NormParams> default_norm_params() {
  const NormParams fde{1.3595, 3.7750, 6.7157};
  return {
      {MetricId::emrde, {0.1135, 0.3856, 9.1380}},
      {MetricId::emrae, {0.1052, 0.4055, 2.2210}},
      {MetricId::omrde, {0.1244, 0.4252, 8.0125}},
      {MetricId::omrae, {0.1155, 0.4152, 2.0542}},
      {MetricId::mre_acc, {0.7250, 1.3056, 0.0216}},
      {MetricId::are, {0.7588, 1.3319, 0.0125}},
      {MetricId::ade, {2.2850, 5.2278, 7.2514}},
      {MetricId::fde1, fde},
      {MetricId::fde2, fde},
      {MetricId::fde3, fde},
  };
}

double normalize_accuracy(double m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw BenchError(Errc::out_of_range, "accuracy must lie in [0,1]");
  }
  return 100.0 * m;
}

double normalize_error(double error, const NormParams& p) {
  if (!(error >= 0.0)) {
    throw BenchError(Errc::negative_error, "raw error must be >= 0");
  }
  if (error < p.x1) return 100.0;
  if (error < p.x2) return 100.0 - 40.0 * (error - p.x1) / (p.x2 - p.x1);
  return 60.0 * std::exp(-p.k * (error - p.x2));
}

std::pair<double, double> calibrate(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw BenchError(Errc::insufficient_samples,
                     "calibration needs at least 2 samples");
  }
  const double x1 = percentile(samples, 0.15);
  const double x2 = percentile(samples, 0.75);
  if (!(x1 < x2)) {
    throw BenchError(Errc::degenerate_distribution,
                     "calibration percentiles coincide");
  }
  return {x1, x2};
}

}  // namespace scenepilot
