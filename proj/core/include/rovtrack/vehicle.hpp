#pragma once

#include "rovtrack/types.hpp"

namespace rovtrack {

// Physical constants of a fully actuated 6-DOF underwater vehicle.
// Added-mass and damping coefficients are stored positive; the model code
// applies them with the conventional signs.
struct VehicleParams {
  double mass = 0.0;         // m (kg)
  double volume = 0.0;       // displaced volume (m^3)
  Vec3 inertia{0, 0, 0};     // Ix, Iy, Iz (kg m^2)
  Vec3 inertia_products{0, 0, 0};  // Ixy, Iyz, Izx (kg m^2)
  Vec3 cog{0, 0, 0};         // center of gravity in body frame (m)
  Vec3 cob{0, 0, 0};         // center of buoyancy in body frame (m)
  Vec6 added_mass = Vec6::Zero();  // Xu', Yv', Zw', Kp', Mq', Nr'
  Vec6 d_lin = Vec6::Zero();       // linear damping diagonal
  Vec6 d_quad = Vec6::Zero();      // quadratic damping diagonal
  double rho = 1000.0;       // water density (kg/m^3)
  double g0 = 9.81;          // gravitational acceleration (m/s^2)

  double weight() const { return mass * g0; }
  double buoyancy() const { return rho * g0 * volume; }

  // Throws InvalidConfig on a physically meaningless parameter set.
  void validate() const;

  // BlueROV2 heavy configuration.
  static VehicleParams bluerov2_heavy();
};

}  // namespace rovtrack
