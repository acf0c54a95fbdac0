#pragma once

#include "rovtrack/types.hpp"
#include "rovtrack/vehicle.hpp"

namespace rovtrack {

// Block-diagonal kinematic transform J(eta) mapping body rates to global rates:
// the translational block is the ZYX Euler rotation matrix, the rotational block
// the Euler-rate matrix. Throws SingularAttitude outside the attitude margin.
Mat6 kinematic_transform(const Vec6& eta, double margin = kAttitudeMargin);

// Time derivative of J along the flow (eta evolving as J(eta) nu), from exact
// entrywise partials. The product Jdot * nu is the acceleration feedforward
// term used by the controller.
Mat6 transform_rate(const Vec6& eta, const Vec6& nu, double margin = kAttitudeMargin);

// Rigid-body plus added mass. Symmetric positive definite for valid params.
Mat6 mass_matrix(const VehicleParams& p);

// Rigid-body plus added-mass Coriolis/centripetal matrix; exactly skew-symmetric.
// The rigid-body block assumes diagonal inertia and CoG at the body origin,
// which holds for the BlueROV2; general CoG is accepted in the mass matrix only.
Mat6 coriolis_matrix(const VehicleParams& p, const Vec6& nu);

// Diagonal linear + quadratic damping, entries >= 0.
Mat6 damping_matrix(const VehicleParams& p, const Vec6& nu);

// Combined gravity/buoyancy force and moment vector in the body frame.
Vec6 restoring_vector(const VehicleParams& p, const Vec6& eta);

struct StateDerivative {
  Vec6 eta_dot;
  Vec6 nu_dot;
};

// Equations of motion: eta_dot = J nu, M nu_dot = tau + tau_d - C nu - D nu - g.
StateDerivative state_derivative(const VehicleParams& p, const Vec6& eta, const Vec6& nu,
                                 const Vec6& tau, const Vec6& tau_d,
                                 double margin = kAttitudeMargin);

// Vehicle model with the constant matrices factored once; the per-state
// evaluations are pure and safe to share across threads.
class VehicleModel {
 public:
  explicit VehicleModel(const VehicleParams& p);

  const VehicleParams& params() const { return params_; }
  const Mat6& mass() const { return mass_; }
  const Mat6& mass_inverse() const { return mass_inv_; }

  Vec6 solve_mass(const Vec6& rhs) const { return mass_inv_ * rhs; }

  StateDerivative state_derivative(const Vec6& eta, const Vec6& nu, const Vec6& tau,
                                   const Vec6& tau_d, double margin = kAttitudeMargin) const;

 private:
  VehicleParams params_;
  Mat6 mass_;
  Mat6 mass_inv_;
};

namespace detail {
// Analytic inverse of J(eta): transpose of the rotation block and the closed-form
// Euler-rate inverse. Requires the same attitude margin as kinematic_transform.
Mat6 kinematic_transform_inverse(const Vec6& eta, double margin = kAttitudeMargin);
}  // namespace detail

}  // namespace rovtrack
