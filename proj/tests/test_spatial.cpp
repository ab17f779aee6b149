#include "scenepilot/error.hpp"
#include "scenepilot/spatial_metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace scenepilot;

TEST_CASE("class accuracy pools over the whole test set") {
  using P = std::pair<ParticipantClass, ParticipantClass>;
  const std::vector<P> pairs = {
      {ParticipantClass::vehicle, ParticipantClass::vehicle},
      {ParticipantClass::truck, ParticipantClass::vehicle},
      {ParticipantClass::pedestrian, ParticipantClass::pedestrian},
      {ParticipantClass::bicycle, ParticipantClass::bicycle},
  };
  CHECK(class_acc(pairs) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(class_acc(std::vector<P>{}), BenchError);
}

TEST_CASE("distance relative error is |pred - gt| / gt") {
  AggregationPolicy policy;
  SpatialSample s{SpatialKind::ego_dist, 12.0, 10.0, "c1"};
  CHECK(relative_error(s, policy) == doctest::Approx(0.2).epsilon(1e-12));
  s.predicted = 8.0;
  CHECK(relative_error(s, policy) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("non-positive reference distances are data errors naming the clip") {
  AggregationPolicy policy;
  SpatialSample s{SpatialKind::pair_dist, 5.0, 0.0, "clip-bad"};
  try {
    relative_error(s, policy);
    FAIL("expected non_positive_gt_distance");
  } catch (const BenchError& e) {
    CHECK(e.code() == Errc::non_positive_gt_distance);
    CHECK(e.field() == "clip-bad");
  }
}

TEST_CASE("angle errors are wrapped and floored by epsilon") {
  AggregationPolicy policy;  // epsilon 0.01 rad
  SpatialSample s{SpatialKind::ego_angle, 0.05, 0.0, "c1"};
  CHECK(relative_error(s, policy) == doctest::Approx(5.0).epsilon(1e-12));
  s.predicted = 0.02;
  CHECK(relative_error(s, policy) == doctest::Approx(2.0).epsilon(1e-12));

  // A large reference uses its own magnitude, not the floor.
  s = {SpatialKind::pair_angle, 1.0, 0.8, "c1"};
  CHECK(relative_error(s, policy) == doctest::Approx(0.2 / 0.8).epsilon(1e-12));

  // Predictions a full turn apart are identical after wrapping.
  s = {SpatialKind::ego_angle, 0.3 + 2.0 * M_PI, 0.3, "c1"};
  CHECK(relative_error(s, policy) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("aggregation weighs clips equally, not samples") {
  std::vector<SpatialSample> samples;
  // Clip a: two samples with error 0.2; clip b: ten samples with error 0.4.
  for (int i = 0; i < 2; ++i) {
    samples.push_back({SpatialKind::ego_dist, 12.0, 10.0, "a"});
  }
  for (int i = 0; i < 10; ++i) {
    samples.push_back({SpatialKind::ego_dist, 14.0, 10.0, "b"});
  }
  const AggregateResult r =
      aggregate(samples, SpatialKind::ego_dist, AggregationPolicy{});
  CHECK(r.clip_count == 2);
  CHECK(r.sample_count == 12);
  CHECK(r.value == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.flat_mean == doctest::Approx((0.4 + 4.0) / 12.0).epsilon(1e-12));
}

TEST_CASE("aggregation only sees samples of the requested kind") {
  std::vector<SpatialSample> samples = {
      {SpatialKind::ego_dist, 11.0, 10.0, "a"},
      {SpatialKind::pair_dist, 20.0, 10.0, "a"},
  };
  const AggregateResult r =
      aggregate(samples, SpatialKind::ego_dist, AggregationPolicy{});
  CHECK(r.sample_count == 1);
  CHECK(r.value == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(aggregate(samples, SpatialKind::ego_angle,
                            AggregationPolicy{}),
                  BenchError);
}

TEST_CASE("aggregation matches a map-based reference on random data") {
  std::mt19937_64 gen(31);
  const auto u01 = [&] {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };
  std::vector<SpatialSample> samples;
  std::map<std::string, std::vector<double>> expected_by_clip;
  for (int i = 0; i < 200; ++i) {
    SpatialSample s;
    s.kind = SpatialKind::pair_dist;
    s.ground_truth = 1.0 + u01() * 20.0;
    s.predicted = s.ground_truth * (1.0 + (u01() - 0.5));
    s.clip_id = "clip-" + std::to_string(gen() % 7);
    expected_by_clip[s.clip_id].push_back(
        std::abs(s.predicted - s.ground_truth) / s.ground_truth);
    samples.push_back(s);
  }
  double outer = 0.0;
  for (const auto& [id, errs] : expected_by_clip) {
    double inner = 0.0;
    for (double e : errs) inner += e;
    outer += inner / static_cast<double>(errs.size());
  }
  outer /= static_cast<double>(expected_by_clip.size());
  const AggregateResult r =
      aggregate(samples, SpatialKind::pair_dist, AggregationPolicy{});
  CHECK(r.value == doctest::Approx(outer).epsilon(1e-12));
  CHECK(r.clip_count == static_cast<int>(expected_by_clip.size()));
}
