#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "rovtrack/controller.hpp"
#include "rovtrack/types.hpp"

namespace rovtrack {

// Constant-velocity line from a start pose: eta_d = start + [v t; 0; 0; heading].
struct StraightLine {
  Vec3 speed = Vec3::Zero();  // global-frame velocity (m/s)
  double heading = 0.0;       // constant yaw (rad)
  Vec3 start = Vec3::Zero();
};

// Constant pose hold.
struct HoldPose {
  Vec6 eta = Vec6::Zero();
};

// Constant-speed transit through ordered waypoints. Interior corners and the
// terminal stop are C1-blended: the velocity is interpolated linearly over a
// window of `blend` seconds centered on the corner time, which keeps the
// commanded acceleration bounded and rejoins the nominal path exactly.
struct WaypointPolyline {
  std::vector<Vec3> waypoints;
  double speed = 0.2;    // m/s
  double heading = 0.0;  // constant yaw unless per-segment headings are given
  std::optional<std::vector<double>> segment_headings;
  double blend = 2.0;  // corner blend window (s)

  void validate() const;
  // time at which segment i starts (i = 0..segments); the last entry is the
  // total transit time
  std::vector<double> segment_times() const;
};

using Trajectory = std::variant<StraightLine, WaypointPolyline, HoldPose>;

void validate_trajectory(const Trajectory& traj);

// Reference pose and its exact first/second derivatives at time t.
// Throws OutOfHorizon when t is outside [0, horizon].
ReferencePoint reference_at(const Trajectory& traj, double t, double horizon);

}  // namespace rovtrack
