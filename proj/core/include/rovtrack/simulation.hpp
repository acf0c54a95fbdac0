#pragma once

#include <cstdint>
#include <vector>

#include "rovtrack/controller.hpp"
#include "rovtrack/trajectory.hpp"
#include "rovtrack/types.hpp"
#include "rovtrack/vehicle.hpp"

namespace rovtrack {

// Constant disturbance with an optional piecewise-constant schedule: each
// entry replaces the wrench from its start time onward.
struct DisturbanceModel {
  Vec6 constant = Vec6::Zero();
  std::vector<std::pair<double, Vec6>> schedule;

  Vec6 at(double t) const;
  void validate(const Vec6& d_max) const;
};

struct SimConfig {
  VehicleParams vehicle = VehicleParams::bluerov2_heavy();
  Trajectory trajectory = StraightLine{};
  DisturbanceModel disturbance;
  Gains gains = Gains::defaults();
  AdaptationConfig adaptation = AdaptationConfig::fuzzy_defaults();
  double dt = 0.01;
  double tf = 60.0;
  // controller sampling rate (Hz); 0 evaluates the control law inside every
  // RK stage (continuous-time reading of the design)
  double control_rate = 0.0;
  Vec6 cost_q = Vec6::Ones();
  Vec6 cost_r = Vec6::Ones();
  std::uint64_t seed = 0;
  Vec6 eta0 = Vec6::Zero();
  Vec6 nu0 = Vec6::Zero();
  Vec6 tauhat0 = Vec6::Zero();
  double attitude_margin = kAttitudeMargin;

  void validate() const;
  std::size_t step_count() const;  // floor(tf/dt)
};

struct SimRecord {
  double t;
  Vec6 eta, nu, eta_d, tau, tau_hat, tau_d, s, gamma;
  double vc;            // 0.5 s^T s
  double running_cost;  // trapezoidal integral of s^T Q s + tau^T R tau up to t
};

struct SimLog {
  std::vector<SimRecord> rows;
};

struct SimState {
  Vec6 eta = Vec6::Zero();
  Vec6 nu = Vec6::Zero();
  Vec6 tau_hat = Vec6::Zero();
};

// One classical RK4 step of the 18-dimensional closed-loop state from time t;
// the control wrench and adaptation rates are re-evaluated at every stage and
// the disturbance is taken at each stage time.
// Throws SingularAttitude / NonFinite on controller blow-up.
SimState rk4_step(const SimConfig& cfg, const VehicleModel& model, const SimState& state,
                  double t);
SimState rk4_step(const SimConfig& cfg, const SimState& state, double t);

// Closed-loop run from the configured initial state. Step errors are rethrown
// with the failure time appended.
SimLog run(const SimConfig& cfg);

// Quadratic tracking/effort cost: trapezoidal quadrature of
// s^T diag(Q) s + tau^T diag(R) tau over the log grid.
double cost(const SimLog& log, const Vec6& q, const Vec6& r);

struct Metrics {
  Vec6 rms_error = Vec6::Zero();
  Vec6 final_mean_abs_error = Vec6::Zero();      // last 10 s
  Vec6 final_mean_abs_est_error = Vec6::Zero();  // last 10 s, |tau_hat - tau_d|
  double osc_amplitude_z = 0.0;      // half peak-to-peak of the Z error
  double osc_amplitude_theta = 0.0;  // half peak-to-peak of the pitch error
  int vc_violations = 0;             // V_c increases beyond 1e-6 after t = 1 s
  double total_cost = 0.0;
};

Metrics metrics(const SimLog& log, const DisturbanceModel& disturbance, const Vec6& cost_q,
                const Vec6& cost_r);

}  // namespace rovtrack
