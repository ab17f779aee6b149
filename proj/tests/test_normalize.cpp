#include "scenepilot/error.hpp"
#include "scenepilot/normalize.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace scenepilot;

TEST_CASE("score curve branches") {
  const auto params = default_norm_params();
  const NormParams& emrde = params.at(MetricId::emrde);

  CHECK(normalize_error(0.05, emrde) == 100.0);
  CHECK(normalize_error(0.0, emrde) == 100.0);
  CHECK(normalize_error(emrde.x2, emrde) == 60.0);
  // Linear midpoint sits at 80.
  CHECK(normalize_error((emrde.x1 + emrde.x2) / 2.0, emrde) ==
        doctest::Approx(80.0).epsilon(1e-12));
  // One half-life past the knee halves the 60.
  const NormParams& ade_p = params.at(MetricId::ade);
  CHECK(normalize_error(ade_p.x2 + std::log(2.0) / ade_p.k, ade_p) ==
        doctest::Approx(30.0).epsilon(1e-12));

  CHECK_THROWS_AS(normalize_error(-0.1, emrde), BenchError);
}

TEST_CASE("accuracy scores scale to percent and reject bad inputs") {
  CHECK(normalize_accuracy(0.0) == 0.0);
  CHECK(normalize_accuracy(1.0) == 100.0);
  CHECK(normalize_accuracy(0.875) == 87.5);
  CHECK_THROWS_AS(normalize_accuracy(-0.01), BenchError);
  CHECK_THROWS_AS(normalize_accuracy(1.01), BenchError);
}

TEST_CASE("every stock parameter row is usable and covers the error metrics") {
  const auto params = default_norm_params();
  CHECK(params.size() == 10);
  for (const auto& [id, p] : params) {
    CAPTURE(to_string(id));
    CHECK_NOTHROW(p.validate());
  }
  // The three displacement horizons share one row.
  CHECK(params.at(MetricId::fde1).x1 == params.at(MetricId::fde3).x1);

  NormParams bad{0.5, 0.5, 1.0};
  CHECK_THROWS_AS(bad.validate(), BenchError);
  bad = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), BenchError);
  bad = {0.5, 1.0, 0.0};
  CHECK_THROWS_AS(bad.validate(), BenchError);
}

TEST_CASE("score curve is continuous, monotone, and positive") {
  std::mt19937_64 gen(17);
  const auto u01 = [&] {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };
  for (const auto& [id, p] : default_norm_params()) {
    CAPTURE(to_string(id));
    // Seam checks: stepping across each knee moves the score by O(step).
    for (double knee : {p.x1, p.x2}) {
      const double below = normalize_error(std::nextafter(knee, 0.0), p);
      const double at = normalize_error(knee, p);
      CHECK(std::abs(below - at) < 1e-9);
    }
    double prev_e = 0.0;
    double prev_s = normalize_error(0.0, p);
    for (int i = 0; i < 2000; ++i) {
      const double e = u01() * 10.0 * p.x2;
      const double s = normalize_error(e, p);
      CHECK(s > 0.0);
      CHECK(s <= 100.0);
      if (e >= prev_e) {
        CHECK(s <= prev_s);
      } else {
        CHECK(s >= prev_s);
      }
      prev_e = e;
      prev_s = s;
    }
  }
}

TEST_CASE("calibration takes the 15th and 75th percentiles") {
  std::vector<double> v(20);
  std::iota(v.begin(), v.end(), 1.0);  // 1..20
  const auto [x1, x2] = calibrate(v);
  // Linear interpolation over 19 gaps lands on exact binary values here.
  CHECK(x1 == 3.85);
  CHECK(x2 == 15.25);

  // Order must not matter.
  std::shuffle(v.begin(), v.end(), std::mt19937_64{5});
  const auto [y1, y2] = calibrate(v);
  CHECK(y1 == x1);
  CHECK(y2 == x2);
}

TEST_CASE("calibration on a large known-quantile sample") {
  std::mt19937_64 gen(99);
  const auto u01 = [&] {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };
  std::vector<double> v(100000);
  for (double& x : v) x = u01() * 10.0;  // quantile q of U(0,10) is 10q
  const auto [x1, x2] = calibrate(v);
  CHECK(x1 == doctest::Approx(1.5).epsilon(0.02));
  CHECK(x2 == doctest::Approx(7.5).epsilon(0.02));
}

TEST_CASE("calibration failure modes") {
  try {
    calibrate(std::vector<double>{1.0});
    FAIL("expected insufficient_samples");
  } catch (const BenchError& e) {
    CHECK(e.code() == Errc::insufficient_samples);
  }

  const std::vector<double> flat(10, 2.5);
  try {
    calibrate(flat);
    FAIL("expected degenerate_distribution");
  } catch (const BenchError& e) {
    CHECK(e.code() == Errc::degenerate_distribution);
  }
}
