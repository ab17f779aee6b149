#include "scenepilot/error.hpp"
#include "scenepilot/motion_metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace scenepilot;

namespace {

// Straight-line trajectory along +x from per-step chord lengths, 0.5 s apart.
struct Line {
  std::vector<Vec3> points;
  std::vector<double> timestamps;

  explicit Line(const std::vector<double>& chords) {
    points.emplace_back(0.0, 0.0, 0.0);
    timestamps.push_back(0.0);
    double x = 0.0;
    for (std::size_t i = 0; i < chords.size(); ++i) {
      x += chords[i];
      points.emplace_back(x, 0.0, 0.0);
      timestamps.push_back(0.5 * static_cast<double>(i + 1));
    }
  }
};

}  // namespace

TEST_CASE("kinematics differentiates positions twice") {
  const std::vector<Vec3> pts = {
      {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {2.2, 0.0, 0.0}, {3.6, 0.0, 0.0}};
  const std::vector<double> ts = {0.0, 0.5, 1.0, 1.5};
  const Kinematics k = kinematics(pts, ts);
  REQUIRE(k.speeds.size() == 3);
  REQUIRE(k.accelerations.size() == 2);
  REQUIRE(k.headings.size() == 3);
  REQUIRE(k.heading_changes.size() == 2);
  CHECK(k.speeds[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(k.speeds[1] == doctest::Approx(2.4).epsilon(1e-12));
  CHECK(k.speeds[2] == doctest::Approx(2.8).epsilon(1e-12));
  CHECK(k.accelerations[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(k.accelerations[1] == doctest::Approx(0.8).epsilon(1e-12));
  for (double h : k.headings) CHECK(h == 0.0);
  for (double dh : k.heading_changes) CHECK(dh == 0.0);
}

TEST_CASE("kinematics uses 3D displacement but planar heading") {
  // Climbing chord: 3-4-12 box gives speed 13/0.5 = 26, heading from (3, 4).
  const std::vector<Vec3> pts = {
      {0.0, 0.0, 0.0}, {3.0, 12.0, 4.0}, {6.0, 24.0, 8.0}};
  const std::vector<double> ts = {0.0, 0.5, 1.0};
  const Kinematics k = kinematics(pts, ts);
  CHECK(k.speeds[0] == doctest::Approx(26.0).epsilon(1e-12));
  CHECK(k.headings[0] == doctest::Approx(std::atan2(4.0, 3.0)).epsilon(1e-12));
}

TEST_CASE("kinematics rejects unusable inputs") {
  const std::vector<Vec3> two = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  const std::vector<double> ts2 = {0.0, 0.5};
  try {
    kinematics(two, ts2);
    FAIL("expected too_few_points");
  } catch (const BenchError& e) {
    CHECK(e.code() == Errc::too_few_points);
  }

  const std::vector<Vec3> three = {
      {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}};
  try {
    kinematics(three, ts2);
    FAIL("expected length_mismatch");
  } catch (const BenchError& e) {
    CHECK(e.code() == Errc::length_mismatch);
  }

  const std::vector<double> backwards = {0.0, 0.5, 0.5};
  try {
    kinematics(three, backwards);
    FAIL("expected non_monotone_timestamps");
  } catch (const BenchError& e) {
    CHECK(e.code() == Errc::non_monotone_timestamps);
  }
}

TEST_CASE("the moving label wins exactly at the threshold") {
  const MotionThresholds thr;
  CHECK(longitudinal_decision(0.15, thr) == LongitudinalAction::accelerating);
  CHECK(longitudinal_decision(-0.15, thr) == LongitudinalAction::braking);
  CHECK(longitudinal_decision(0.1499, thr) == LongitudinalAction::constant);
  CHECK(longitudinal_decision(-0.1499, thr) == LongitudinalAction::constant);
  CHECK(longitudinal_decision(0.1501, thr) == LongitudinalAction::accelerating);
  CHECK(longitudinal_decision(0.0, thr) == LongitudinalAction::constant);

  const double rad = thr.heading_rad();
  CHECK(rad == doctest::Approx(8.0 * std::numbers::pi / 180.0).epsilon(1e-15));
  CHECK(lateral_decision(rad, thr) == LateralAction::left_turn);
  CHECK(lateral_decision(-rad, thr) == LateralAction::right_turn);
  CHECK(lateral_decision(std::nextafter(rad, 0.0), thr) ==
        LateralAction::straight);
  CHECK(lateral_decision(0.0, thr) == LateralAction::straight);

  MotionThresholds bad;
  bad.accel_mps2 = 0.0;
  CHECK_THROWS_AS(bad.validate(), BenchError);
}

TEST_CASE("classification from clearly-margined trajectories") {
  const MotionThresholds thr;

  // Speeds 8, 8.4, ..., growing 0.8 m/s^2; straight.
  std::vector<double> chords;
  for (int i = 0; i < 6; ++i) chords.push_back((8.0 + 0.4 * i) * 0.5);
  Line accel(chords);
  MetaAction a = classify_meta_action(accel.points, accel.timestamps, thr);
  CHECK(a.longitudinal == LongitudinalAction::accelerating);
  CHECK(a.lateral == LateralAction::straight);

  // Same magnitudes reversed: braking.
  std::vector<double> rev(chords.rbegin(), chords.rend());
  Line brake(rev);
  a = classify_meta_action(brake.points, brake.timestamps, thr);
  CHECK(a.longitudinal == LongitudinalAction::braking);
  CHECK(a.lateral == LateralAction::straight);

  // Constant speed on a gentle arc staying inside 8 degrees: straight.
  std::vector<Vec3> arc;
  std::vector<double> ts;
  double theta = 0.0;
  double x = 0.0, z = 0.0;
  for (int i = 0; i < 7; ++i) {
    arc.emplace_back(x, 0.0, z);
    ts.push_back(0.5 * i);
    x += std::cos(theta) * 5.0;
    z += std::sin(theta) * 5.0;
    theta += 0.01;  // ~3.4 degrees total, below threshold
  }
  a = classify_meta_action(arc, ts, thr);
  CHECK(a.longitudinal == LongitudinalAction::constant);
  CHECK(a.lateral == LateralAction::straight);

  // Sharper arc, ~17 degrees net: left turn. Mirror in z: right turn.
  std::vector<Vec3> turn, mirror;
  ts.clear();
  theta = 0.0;
  x = z = 0.0;
  for (int i = 0; i < 7; ++i) {
    turn.emplace_back(x, 0.0, z);
    mirror.emplace_back(x, 0.0, -z);
    ts.push_back(0.5 * i);
    x += std::cos(theta) * 5.0;
    z += std::sin(theta) * 5.0;
    theta += 0.05;
  }
  a = classify_meta_action(turn, ts, thr);
  CHECK(a.longitudinal == LongitudinalAction::constant);
  CHECK(a.lateral == LateralAction::left_turn);
  a = classify_meta_action(mirror, ts, thr);
  CHECK(a.lateral == LateralAction::right_turn);
}

TEST_CASE("dyadic chords reach the acceleration threshold exactly") {
  // Chords are multiples of 1/32; every speed, difference, and the mean
  // come out exact in binary, so the mean acceleration is 0.15 precisely.
  Line l({0.5, 0.53125, 0.5625, 0.59375, 0.625, 0.6875});
  const Kinematics k = kinematics(l.points, l.timestamps);
  double sum = 0.0;
  for (double acc : k.accelerations) sum += acc;
  const double mean = sum / static_cast<double>(k.accelerations.size());
  CHECK(mean == 0.15);

  const MotionThresholds thr;
  MetaAction a = classify_meta_action(l.points, l.timestamps, thr);
  CHECK(a.longitudinal == LongitudinalAction::accelerating);

  // Mirrored chord order decelerates at exactly -0.15.
  Line r({0.6875, 0.625, 0.59375, 0.5625, 0.53125, 0.5});
  a = classify_meta_action(r.points, r.timestamps, thr);
  CHECK(a.longitudinal == LongitudinalAction::braking);
}

TEST_CASE("first-chord tilt reaches the heading threshold exactly") {
  const MotionThresholds thr;
  const double rad = thr.heading_rad();

  for (int sign : {+1, -1}) {
    // One chord tilted by -sign * threshold, then straight along +x. The
    // final heading is +0.0 by construction, so the net change is exactly
    // sign * threshold when atan2/cos/sin round-trip the angle; assert the
    // construction before relying on it.
    const double tilt = -sign * rad;
    std::vector<Vec3> pts = {{0.0, 0.0, 0.0},
                             {std::cos(tilt) * 0.5, 0.0, std::sin(tilt) * 0.5}};
    std::vector<double> ts = {0.0, 0.5};
    for (int i = 2; i < 7; ++i) {
      pts.emplace_back(pts.back().x() + 0.5, 0.0, pts.back().z());
      ts.push_back(0.5 * i);
    }
    REQUIRE(std::atan2(pts[1].z(), pts[1].x()) == tilt);

    const MetaAction a = classify_meta_action(pts, ts, thr);
    CHECK(a.longitudinal == LongitudinalAction::constant);
    CHECK(a.lateral == (sign > 0 ? LateralAction::left_turn
                                 : LateralAction::right_turn));
  }
}

TEST_CASE("net heading change wraps across the pi seam") {
  // Travel along -x (heading pi), then bend to pi + 20 degrees. Unwrapped
  // the change reads -340 degrees; wrapped it is +20, a left turn.
  const double bend = std::numbers::pi + 20.0 * std::numbers::pi / 180.0;
  std::vector<Vec3> pts = {{0.0, 0.0, 0.0}, {-5.0, 0.0, 0.0}};
  std::vector<double> ts = {0.0, 0.5};
  for (int i = 2; i < 7; ++i) {
    pts.emplace_back(pts.back().x() + std::cos(bend) * 5.0, 0.0,
                     pts.back().z() + std::sin(bend) * 5.0);
    ts.push_back(0.5 * i);
  }
  const MetaAction a = classify_meta_action(pts, ts, MotionThresholds{});
  CHECK(a.lateral == LateralAction::left_turn);
}

TEST_CASE("decision accuracy scores clips, then averages") {
  const MetaAction cs{LongitudinalAction::constant, LateralAction::straight};
  const MetaAction al{LongitudinalAction::accelerating,
                      LateralAction::left_turn};
  const MetaAction as{LongitudinalAction::accelerating,
                      LateralAction::straight};
  std::vector<MetaActionSample> samples = {
      {cs, cs, "a"},
      {al, as, "a"},  // lateral wrong: whole pair counts as a miss
      {as, as, "b"},
  };
  CHECK(dcs_acc(samples) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_THROWS_AS(dcs_acc(std::vector<MetaActionSample>{}), BenchError);
}

TEST_CASE("acceleration and heading relative errors") {
  std::vector<MotionScalarSample> acc = {
      {1.2, 1.0, "a"},
      {0.5, 1.0, "b"},
  };
  CHECK(mre_acc(acc) == doctest::Approx(0.35).epsilon(1e-12));

  acc.push_back({0.1, 0.0, "c"});
  try {
    mre_acc(acc);
    FAIL("expected zero_gt_acceleration");
  } catch (const BenchError& e) {
    CHECK(e.code() == Errc::zero_gt_acceleration);
  }

  // Heading errors floor tiny references at epsilon and wrap differences.
  std::vector<MotionScalarSample> ang = {{0.05, 0.0, "a"}};
  CHECK(are(ang) == doctest::Approx(5.0).epsilon(1e-12));
  ang[0] = {0.3 + 2.0 * std::numbers::pi, 0.3, "a"};
  CHECK(are(ang) == doctest::Approx(0.0).epsilon(1e-9));
  ang[0] = {1.0, 0.8, "a"};
  CHECK(are(ang) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("displacement errors over aligned trajectories") {
  // Prediction leads ground truth by 0.5 m per half-second step.
  std::vector<Vec3> gt, pred;
  for (int k = 0; k < 7; ++k) {
    gt.emplace_back(2.0 * k, 0.0, 0.0);
    pred.emplace_back(2.0 * k + 0.5 * k, 0.0, 0.0);
  }
  CHECK(ade(pred, gt) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fde_at(pred, gt, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fde_at(pred, gt, 2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fde_at(pred, gt, 3) == doctest::Approx(3.0).epsilon(1e-12));

  try {
    fde_at(pred, gt, 4);  // index 8 of a 7-point trajectory
    FAIL("expected out_of_range");
  } catch (const BenchError& e) {
    CHECK(e.code() == Errc::out_of_range);
  }

  std::vector<Vec3> short_pred(pred.begin(), pred.end() - 1);
  CHECK_THROWS_AS(ade(short_pred, gt), BenchError);
  CHECK_THROWS_AS(ade(std::vector<Vec3>{}, std::vector<Vec3>{}), BenchError);
}
