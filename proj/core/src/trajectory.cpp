#include "rovtrack/trajectory.hpp"

#include <cmath>

namespace rovtrack {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_attitude_target(double phi, double theta, const char* what) {
  if (std::abs(phi) >= kHalfPi || std::abs(theta) >= kHalfPi) {
    throw InvalidConfig(std::string(what) + ": attitude target outside |phi|,|theta| < pi/2");
  }
}
}  // namespace

void WaypointPolyline::validate() const {
  if (waypoints.size() < 2) throw InvalidConfig("polyline needs at least 2 waypoints");
  if (!(speed > 0.0)) throw InvalidConfig("polyline speed must be > 0");
  if (!(blend >= 0.0)) throw InvalidConfig("polyline blend window must be >= 0");
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    if ((waypoints[i + 1] - waypoints[i]).norm() <= 0.0)
      throw InvalidConfig("polyline has a zero-length segment");
  }
  if (segment_headings && segment_headings->size() != waypoints.size() - 1)
    throw InvalidConfig("polyline needs one heading per segment");
  const auto times = segment_times();
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    if (times[i + 1] - times[i] < blend)
      throw InvalidConfig("polyline segment shorter than the blend window");
  }
}

std::vector<double> WaypointPolyline::segment_times() const {
  std::vector<double> t{0.0};
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    t.push_back(t.back() + (waypoints[i + 1] - waypoints[i]).norm() / speed);
  }
  return t;
}

void validate_trajectory(const Trajectory& traj) {
  std::visit(
      [](const auto& tr) {
        using T = std::decay_t<decltype(tr)>;
        if constexpr (std::is_same_v<T, StraightLine>) {
          if (!tr.speed.allFinite() || !std::isfinite(tr.heading))
            throw InvalidConfig("straight line: non-finite field");
        } else if constexpr (std::is_same_v<T, WaypointPolyline>) {
          tr.validate();
        } else {
          check_attitude_target(tr.eta[3], tr.eta[4], "hold");
          if (!tr.eta.allFinite()) throw InvalidConfig("hold: non-finite pose");
        }
      },
      traj);
}

namespace {

ReferencePoint straight_line_at(const StraightLine& tr, double t) {
  ReferencePoint r;
  r.eta.head<3>() = tr.start + tr.speed * t;
  r.eta[5] = tr.heading;
  r.eta_dot.head<3>() = tr.speed;
  return r;
}

// Heading interpolation shares the corner blend windows; yaw moves at the
// constant rate wrap(dpsi)/blend inside a window.
struct HeadingRef {
  double psi, psi_dot;
};

HeadingRef heading_at(const WaypointPolyline& tr, const std::vector<double>& times, double t) {
  if (!tr.segment_headings) return {tr.heading, 0.0};
  const auto& hs = *tr.segment_headings;
  const std::size_t nseg = hs.size();
  const double half = tr.blend / 2.0;
  double psi = hs[0];
  for (std::size_t corner = 1; corner < nseg; ++corner) {
    const double tc = times[corner];
    const double dpsi = wrap_angle(hs[corner] - hs[corner - 1]);
    if (t <= tc - half) break;
    if (t >= tc + half || tr.blend == 0.0) {
      psi = psi + dpsi;
      continue;
    }
    const double u = (t - (tc - half)) / tr.blend;
    return {psi + dpsi * u, dpsi / tr.blend};
  }
  return {psi, 0.0};
}

ReferencePoint polyline_at(const WaypointPolyline& tr, double t) {
  const auto times = tr.segment_times();
  const std::size_t nseg = tr.waypoints.size() - 1;
  const double end = times.back();
  const double half = tr.blend / 2.0;

  // per-segment velocities, with a terminal zero-velocity "segment"
  auto seg_velocity = [&](std::size_t i) -> Vec3 {
    if (i >= nseg) return Vec3::Zero();
    return tr.speed * (tr.waypoints[i + 1] - tr.waypoints[i]).normalized();
  };

  ReferencePoint r;
  const HeadingRef h = heading_at(tr, times, std::min(t, end));
  r.eta[5] = h.psi;
  r.eta_dot[5] = h.psi_dot;

  if (t >= end + half) {  // at rest on the final waypoint
    r.eta.head<3>() = tr.waypoints.back();
    return r;
  }

  // corner blends (interior corners at times[1..nseg-1], terminal stop at end)
  if (tr.blend > 0.0) {
    for (std::size_t corner = 1; corner <= nseg; ++corner) {
      const double tc = times[corner];
      if (t < tc - half || t > tc + half) continue;
      const Vec3 v0 = seg_velocity(corner - 1);
      const Vec3 v1 = seg_velocity(corner);
      const double dt = t - (tc - half);
      const Vec3 p0 = tr.waypoints[corner] - v0 * half;
      r.eta.head<3>() = p0 + v0 * dt + (v1 - v0) * (dt * dt / (2.0 * tr.blend));
      r.eta_dot.head<3>() = v0 + (v1 - v0) * (dt / tr.blend);
      r.eta_ddot.head<3>() = (v1 - v0) / tr.blend;
      return r;
    }
  }

  // nominal constant-velocity segment
  std::size_t seg = 0;
  while (seg + 1 < nseg && t >= times[seg + 1]) ++seg;
  const Vec3 v = seg_velocity(seg);
  r.eta.head<3>() = tr.waypoints[seg] + v * (t - times[seg]);
  r.eta_dot.head<3>() = v;
  return r;
}

}  // namespace

ReferencePoint reference_at(const Trajectory& traj, double t, double horizon) {
  if (t < 0.0 || t > horizon) {
    throw OutOfHorizon("reference queried at t=" + std::to_string(t) +
                       " outside [0, " + std::to_string(horizon) + "]");
  }
  return std::visit(
      [&](const auto& tr) -> ReferencePoint {
        using T = std::decay_t<decltype(tr)>;
        if constexpr (std::is_same_v<T, StraightLine>) {
          return straight_line_at(tr, t);
        } else if constexpr (std::is_same_v<T, WaypointPolyline>) {
          return polyline_at(tr, t);
        } else {
          ReferencePoint r;
          r.eta = tr.eta;
          return r;
        }
      },
      traj);
}

}  // namespace rovtrack
