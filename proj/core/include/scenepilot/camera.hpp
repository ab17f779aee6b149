#pragma once

#include "scenepilot/grid_io.hpp"
#include "scenepilot/types.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scenepilot {

// Pinhole intrinsics with zero skew.
struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  Eigen::Matrix3d matrix() const;
  void validate() const;  // fx, fy > 0
};

// World-to-camera rigid transform (R, t); the camera-to-world matrix is
// derived, never stored independently.
struct CameraPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();

  // Throws BenchError(non_orthonormal_rotation) unless
  // max|R^T R - I| < 1e-6 and det(R) > 0.
  void validate() const;
  Vec3 camera_center() const;  // -R^T t in world coordinates
  Eigen::Matrix4d camera_to_world() const;
};

// Per-frame sensing bundle: calibration, pose, and the optional depth and
// per-object mask grids the geometry stage consumes.
struct CameraFrame {
  std::string clip_id;
  int frame_index = 0;
  Intrinsics intrinsics;
  CameraPose pose;
  std::optional<DepthGrid> depth;
  std::map<std::string, MaskGrid> masks;  // keyed by object_id
};

// Lifts pixel (u, v) at depth z to the camera frame:
// (z*(u-cx)/fx, z*(v-cy)/fy, z). Throws on z <= 0.
Vec3 backproject(const Intrinsics& k, double u, double v, double depth);

// Pinhole projection of a camera-frame point with z > 0.
Eigen::Vector2d project(const Intrinsics& k, const Vec3& p);

// Applies a homogeneous transform and dehomogenizes.
Vec3 to_world(const Eigen::Matrix4d& camera_to_world, const Vec3& p_camera);

// Camera centers across the clip, expressed relative to the first frame's
// center; the first point is exactly the origin.
std::vector<Vec3> ego_trajectory(std::span<const CameraPose> poses);

}  // namespace scenepilot
