#include "scenepilot/camera.hpp"
#include "scenepilot/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace scenepilot;

namespace {

double u01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("backprojection at the principal point is purely axial") {
  const Intrinsics k{500.0, 500.0, 64.0, 32.0};
  const Vec3 p = backproject(k, 64.0, 32.0, 7.5);
  CHECK(p.x() == 0.0);
  CHECK(p.y() == 0.0);
  CHECK(p.z() == 7.5);

  const Vec3 q = backproject(k, 114.0, 32.0, 5.0);
  CHECK(q.x() == doctest::Approx(0.5).epsilon(1e-12));  // 5*(114-64)/500
  CHECK(q.y() == 0.0);
}

TEST_CASE("projection inverts backprojection") {
  const Intrinsics k{721.5, 719.2, 609.6, 172.85};
  std::mt19937_64 gen(11);
  for (int i = 0; i < 500; ++i) {
    const double u = u01(gen) * 1240.0;
    const double v = u01(gen) * 370.0;
    const double z = 0.5 + u01(gen) * 80.0;
    const Eigen::Vector2d uv = project(k, backproject(k, u, v, z));
    CHECK(std::abs(uv.x() - u) < 1e-9);
    CHECK(std::abs(uv.y() - v) < 1e-9);
  }
}

TEST_CASE("non-positive depth is rejected on both directions") {
  const Intrinsics k{500.0, 500.0, 64.0, 32.0};
  CHECK_THROWS_AS(backproject(k, 10.0, 10.0, 0.0), BenchError);
  CHECK_THROWS_AS(backproject(k, 10.0, 10.0, -1.0), BenchError);
  CHECK_THROWS_AS(project(k, Vec3(1.0, 1.0, 0.0)), BenchError);
}

TEST_CASE("pose validation rejects non-orthonormal rotations") {
  CameraPose pose;
  CHECK_NOTHROW(pose.validate());

  pose.rotation(0, 0) = 1.1;
  CHECK_THROWS_AS(pose.validate(), BenchError);

  // A reflection has determinant -1 and must be rejected too.
  pose.rotation = Eigen::Matrix3d::Identity();
  pose.rotation(2, 2) = -1.0;
  try {
    pose.validate();
    FAIL("expected non_orthonormal_rotation");
  } catch (const BenchError& e) {
    CHECK(e.code() == Errc::non_orthonormal_rotation);
  }
}

TEST_CASE("camera center for a rotated pose") {
  // 90-degree yaw with translation (1,0,0): center = -R^T t = (0,0,-1).
  CameraPose pose;
  pose.rotation << 0, 0, 1, 0, 1, 0, -1, 0, 0;
  pose.translation = Vec3(1.0, 0.0, 0.0);
  CHECK_NOTHROW(pose.validate());
  const Vec3 c = pose.camera_center();
  CHECK(c.x() == doctest::Approx(0.0));
  CHECK(c.y() == doctest::Approx(0.0));
  CHECK(c.z() == doctest::Approx(-1.0));
}

TEST_CASE("ego trajectory is anchored at the first frame's center") {
  std::vector<CameraPose> poses(4);
  for (int k = 0; k < 4; ++k) {
    poses[k].translation = Vec3(0.0, 0.0, -0.8 * k);
  }
  const std::vector<Vec3> traj = ego_trajectory(poses);
  REQUIRE(traj.size() == 4);
  CHECK(traj[0].norm() == 0.0);
  CHECK(traj[2].z() == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(traj[3].z() == doctest::Approx(2.4).epsilon(1e-12));
}

TEST_CASE("ego trajectory is invariant to a global rigid offset") {
  std::mt19937_64 gen(5);
  std::vector<CameraPose> poses(10);
  for (auto& p : poses) {
    p.translation = Vec3(u01(gen) * 4.0 - 2.0, u01(gen) * 0.2, u01(gen) * 10.0);
  }
  const std::vector<Vec3> base = ego_trajectory(poses);

  // Shifting every camera center by the same world offset leaves the
  // first-frame-relative trajectory unchanged (identity rotations, so the
  // center moves by -delta t).
  const Vec3 shift(3.0, -1.0, 12.0);
  std::vector<CameraPose> shifted = poses;
  for (auto& p : shifted) p.translation -= shift;
  const std::vector<Vec3> moved = ego_trajectory(shifted);
  for (std::size_t i = 0; i < poses.size(); ++i) {
    CHECK((moved[i] - base[i]).norm() < 1e-12);
  }
}

TEST_CASE("ego trajectory validates every pose and rejects empty input") {
  CHECK_THROWS_AS(ego_trajectory(std::vector<CameraPose>{}), BenchError);
  std::vector<CameraPose> poses(3);
  poses[1].rotation(0, 1) = 0.5;
  CHECK_THROWS_AS(ego_trajectory(poses), BenchError);
}
