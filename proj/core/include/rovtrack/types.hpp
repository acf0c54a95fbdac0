#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rovtrack {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// 6-DOF vectors follow the marine convention throughout:
//   pose eta     = [X, Y, Z, phi, theta, psi]   global position (m) + ZYX Euler angles (rad)
//   velocity nu  = [u, v, w, p, q, r]           body-frame linear (m/s) + angular (rad/s)
//   wrench tau   = body-frame forces (N) + moments (N*m); used for the control wrench,
//                  the environmental disturbance and its running estimate.

// Attitude margin below pi/2 inside which the Euler-rate transform stays regular.
inline constexpr double kAttitudeMargin = 1e-3;

struct SingularAttitude : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidMf : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateAggregate : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfHorizon : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonFinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyLog : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AllCandidatesFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double pi = std::numbers::pi;
  a = std::fmod(a + pi, 2.0 * pi);
  if (a <= 0.0) a += 2.0 * pi;
  return a - pi;
}

inline void check_attitude(const Vec6& eta, double margin = kAttitudeMargin) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (std::abs(eta[3]) > half_pi - margin || std::abs(eta[4]) > half_pi - margin) {
    throw SingularAttitude("roll/pitch outside the regular attitude range: phi=" +
                           std::to_string(eta[3]) + " theta=" + std::to_string(eta[4]));
  }
}

}  // namespace rovtrack
