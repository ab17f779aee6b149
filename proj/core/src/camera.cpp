#include "scenepilot/camera.hpp"

#include "scenepilot/error.hpp"

#include <cmath>

namespace scenepilot {

Eigen::Matrix3d Intrinsics::matrix() const {
  Eigen::Matrix3d k = Eigen::Matrix3d::Identity();
  k(0, 0) = fx;
  k(1, 1) = fy;
  k(0, 2) = cx;
  k(1, 2) = cy;
  return k;
}

void Intrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy) ||
      !std::isfinite(cx) || !std::isfinite(cy)) {
    throw BenchError(Errc::invariant_violation,
                     "focal lengths must be finite and positive", 0,
                     "intrinsics");
  }
}

void CameraPose::validate() const {
  const Eigen::Matrix3d residual =
      rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
  if (residual.cwiseAbs().maxCoeff() >= 1e-6) {
    throw BenchError(Errc::non_orthonormal_rotation,
                     "rotation is not orthonormal", 0, "rotation");
  }
  if (!(rotation.determinant() > 0.0)) {
    throw BenchError(Errc::non_orthonormal_rotation,
                     "rotation determinant must be positive", 0, "rotation");
  }
}

Vec3 CameraPose::camera_center() const {
  return -(rotation.transpose() * translation);
}

Eigen::Matrix4d CameraPose::camera_to_world() const {
  Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
  t.block<3, 3>(0, 0) = rotation.transpose();
  t.block<3, 1>(0, 3) = camera_center();
  return t;
}

Vec3 backproject(const Intrinsics& k, double u, double v, double depth) {
  if (!(depth > 0.0) || !std::isfinite(depth)) {
    throw BenchError(Errc::non_positive_depth,
                     "backprojection requires depth > 0", 0, "depth");
  }
  return {depth * (u - k.cx) / k.fx, depth * (v - k.cy) / k.fy, depth};
}

Eigen::Vector2d project(const Intrinsics& k, const Vec3& p) {
  if (!(p.z() > 0.0)) {
    throw BenchError(Errc::non_positive_depth,
                     "projection requires a point in front of the camera", 0,
                     "point");
  }
  return {k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy};
}

Vec3 to_world(const Eigen::Matrix4d& camera_to_world, const Vec3& p_camera) {
  const Eigen::Vector4d h =
      camera_to_world * Eigen::Vector4d(p_camera.x(), p_camera.y(),
                                        p_camera.z(), 1.0);
  return h.head<3>() / h.w();
}

std::vector<Vec3> ego_trajectory(std::span<const CameraPose> poses) {
  if (poses.empty()) {
    throw BenchError(Errc::empty_input, "ego trajectory needs at least one pose");
  }
  for (const CameraPose& pose : poses) pose.validate();
  const Vec3 origin = poses.front().camera_center();
  std::vector<Vec3> out;
  out.reserve(poses.size());
  for (const CameraPose& pose : poses) {
    out.push_back(pose.camera_center() - origin);
  }
  return out;
}

}  // namespace scenepilot
