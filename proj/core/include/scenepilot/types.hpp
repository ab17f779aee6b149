#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scenepilot {

using Vec3 = Eigen::Vector3d;

// The five traffic-participant categories every detector and annotation
// in the kit agrees on.
enum class ParticipantClass : std::uint8_t {
  vehicle,
  truck,
  bicycle,
  motorcycle,
  pedestrian,
};
inline constexpr std::array<ParticipantClass, 5> kAllParticipantClasses = {
    ParticipantClass::vehicle,    ParticipantClass::truck,
    ParticipantClass::bicycle,    ParticipantClass::motorcycle,
    ParticipantClass::pedestrian,
};

const char* to_string(ParticipantClass c);
std::optional<ParticipantClass> participant_class_from_string(const std::string& s);

enum class TrafficSide : std::uint8_t { right, left };
const char* to_string(TrafficSide s);
std::optional<TrafficSide> traffic_side_from_string(const std::string& s);

enum class RiskClass : std::uint8_t { low, medium, high };
const char* to_string(RiskClass c);
std::optional<RiskClass> risk_class_from_string(const std::string& s);

enum class LongitudinalAction : std::uint8_t { accelerating, braking, constant };
enum class LateralAction : std::uint8_t { left_turn, right_turn, straight };
const char* to_string(LongitudinalAction a);
const char* to_string(LateralAction a);
std::optional<LongitudinalAction> longitudinal_from_string(const std::string& s);
std::optional<LateralAction> lateral_from_string(const std::string& s);

// A discrete behavior pair derived from a short future trajectory.
struct MetaAction {
  LongitudinalAction longitudinal = LongitudinalAction::constant;
  LateralAction lateral = LateralAction::straight;

  bool operator==(const MetaAction&) const = default;
};

// Axis-aligned box in normalized image coordinates.
struct BBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool valid() const {
    return 0.0 <= x_min && x_min < x_max && x_max <= 1.0 && 0.0 <= y_min &&
           y_min < y_max && y_max <= 1.0;
  }
  bool operator==(const BBox&) const = default;
};

enum class Task : std::uint8_t {
  scene_desc,
  risk,
  participant_class,
  ego_distance,
  ego_angle,
  pair_distance,
  pair_angle,
  meta_action,
  trajectory,
  free_qa,
};
const char* to_string(Task t);
std::optional<Task> task_from_string(const std::string& s);

// The fourteen scored metrics plus the judge module value.
enum class MetricId : std::uint8_t {
  spice,
  risk_class_acc,
  class_acc,
  emrde,
  emrae,
  omrde,
  omrae,
  dcs_acc,
  mre_acc,
  are,
  ade,
  fde1,
  fde2,
  fde3,
  gpt_alignment,
};
inline constexpr std::array<MetricId, 15> kAllMetrics = {
    MetricId::spice,   MetricId::risk_class_acc, MetricId::class_acc,
    MetricId::emrde,   MetricId::emrae,          MetricId::omrde,
    MetricId::omrae,   MetricId::dcs_acc,        MetricId::mre_acc,
    MetricId::are,     MetricId::ade,            MetricId::fde1,
    MetricId::fde2,    MetricId::fde3,           MetricId::gpt_alignment,
};

const char* to_string(MetricId m);
std::optional<MetricId> metric_from_string(const std::string& s);
// Error-based metrics run through the piecewise error normalization;
// the rest are accuracies scaled linearly to [0, 100].
bool is_error_metric(MetricId m);

// How a participant's bearing is computed from its foreground centroid:
// forward_axis measures off the camera's optical axis in the ground plane,
// literal_xy applies atan2 to the raw (x, y) components.
enum class AzimuthMode : std::uint8_t { forward_axis, literal_xy };
const char* to_string(AzimuthMode m);
std::optional<AzimuthMode> azimuth_mode_from_string(const std::string& s);

enum class ModuleId : std::uint8_t { scene, spatial, motion, gpt };
inline constexpr std::array<ModuleId, 4> kAllModules = {
    ModuleId::scene, ModuleId::spatial, ModuleId::motion, ModuleId::gpt};
const char* to_string(ModuleId m);
ModuleId module_of(MetricId m);

// Wraps an angle difference into (-pi, pi].
double wrap_angle(double radians);

}  // namespace scenepilot
