#pragma once

#include <memory>

#include "rovtrack/dynamics.hpp"
#include "rovtrack/fuzzy.hpp"
#include "rovtrack/types.hpp"

namespace rovtrack {

struct Gains {
  Vec6 k1 = Vec6::Zero();
  Vec6 k2 = Vec6::Zero();

  void validate() const;

  // The PSO-tuned set shipped as the project default.
  static Gains defaults();
};

enum class AdaptationMode { baseline, constant_rate, fuzzy };
enum class FisInput { transposed, direct };

struct AdaptationConfig {
  AdaptationMode mode = AdaptationMode::fuzzy;
  Vec6 gamma = Vec6::Zero();  // constant_rate mode
  std::shared_ptr<const RuleBase> translational;  // fuzzy mode, DOFs 1-3
  std::shared_ptr<const RuleBase> rotational;     // fuzzy mode, DOFs 4-6
  // estimate clamp per DOF; 0 disables clamping for that DOF
  Vec6 d_max = (Vec6() << 10, 10, 10, 2, 2, 2).finished();
  FisInput fis_input = FisInput::transposed;

  void validate() const;
  static AdaptationConfig fuzzy_defaults();
  static AdaptationConfig baseline();
  static AdaptationConfig constant(const Vec6& gamma);
};

struct ReferencePoint {
  Vec6 eta = Vec6::Zero();
  Vec6 eta_dot = Vec6::Zero();
  Vec6 eta_ddot = Vec6::Zero();
};

struct ControllerState {
  Vec6 tau_hat = Vec6::Zero();  // disturbance estimate
  Vec6 last_s = Vec6::Zero();
  Vec6 last_gamma = Vec6::Zero();
};

struct TrackingError {
  Vec6 e;
  Vec6 e_dot;
};

// e = eta - eta_d (yaw wrapped to (-pi, pi]); e_dot = J(eta) nu - eta_dot_d.
TrackingError tracking_error(const Vec6& eta, const Vec6& nu, const ReferencePoint& ref,
                             double margin = kAttitudeMargin);

// s = e_dot + diag(k1) e.
Vec6 sliding_surface(const Vec6& e, const Vec6& e_dot, const Vec6& k1);

// Backstepping/feedback-linearization wrench:
//   tau = M J^-1 (eta_ddot_d - k1 e_dot - k2 s - Jdot nu) + (C + D) nu + g - tau_hat.
// Substituted into the plant this gives
//   eta_ddot = eta_ddot_d - k1 e_dot - k2 s + J M^-1 (tau_d - tau_hat) exactly.
Vec6 control_wrench(const VehicleModel& model, const Vec6& eta, const Vec6& nu,
                    const ReferencePoint& ref, const Gains& gains, const Vec6& tau_hat,
                    double margin = kAttitudeMargin);

// b = M^-1 J^T s, the single vector driving the disturbance adaptation and,
// as |b_i|, the fuzzy antecedents.
Vec6 adaptation_drive(const VehicleModel& model, const Vec6& eta, const Vec6& s,
                      double margin = kAttitudeMargin);

// Per-DOF adaptation rates: zero (baseline), configured constants, or fuzzy
// inference on |signal_i| with the translational base for DOFs 1-3 and the
// rotational base for DOFs 4-6.
Vec6 adaptation_rates(const AdaptationConfig& cfg, const Vec6& signal);

// tau_hat_dot = diag(gamma) b, with components projected to zero when the
// estimate sits at its +-d_max clamp and the derivative points outward.
Vec6 adaptation_derivative(const Vec6& gamma, const Vec6& b, const Vec6& tau_hat,
                           const Vec6& d_max);

}  // namespace rovtrack
