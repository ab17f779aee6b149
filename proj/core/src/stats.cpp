#include "scenepilot/stats.hpp"

#include "scenepilot/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace scenepilot {

double percentile(std::span<const double> data, double p) {
  if (data.empty()) {
    throw BenchError(Errc::empty_input, "percentile of empty set");
  }
  if (p < 0.0 || p > 1.0) {
    throw BenchError(Errc::out_of_range, "percentile rank outside [0,1]");
  }
  const std::size_t n = data.size();
  if (n == 1) return data[0];

  const double h = static_cast<double>(n - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);

  // Partial selection instead of a full sort; the test oracle uses the
  // sort-based route.
  std::vector<double> work(data.begin(), data.end());
  std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(lo),
                   work.end());
  const double v_lo = work[lo];
  if (frac == 0.0 || lo + 1 >= n) return v_lo;
  const double v_hi =
      *std::min_element(work.begin() + static_cast<std::ptrdiff_t>(lo) + 1,
                        work.end());
  return v_lo + frac * (v_hi - v_lo);
}

double median_abs_deviation(std::span<const double> data, double center) {
  std::vector<double> dev;
  dev.reserve(data.size());
  for (double x : data) dev.push_back(std::abs(x - center));
  return median(dev);
}

double mean(std::span<const double> data) {
  if (data.empty()) {
    throw BenchError(Errc::empty_input, "mean of empty set");
  }
  double sum = 0.0;
  for (double x : data) sum += x;
  return sum / static_cast<double>(data.size());
}

double clip_then_mean(
    const std::map<std::string, std::vector<double>>& by_clip) {
  if (by_clip.empty()) {
    throw BenchError(Errc::no_samples, "no clips to aggregate");
  }
  double outer = 0.0;
  for (const auto& [clip_id, values] : by_clip) {
    outer += mean(values);
  }
  return outer / static_cast<double>(by_clip.size());
}

}  // namespace scenepilot

