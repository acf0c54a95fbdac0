#include "rovtrack/simulation.hpp"

#include <algorithm>
#include <cmath>

namespace rovtrack {

Vec6 DisturbanceModel::at(double t) const {
  Vec6 v = constant;
  for (const auto& [tk, tau] : schedule) {
    if (t >= tk) v = tau;
  }
  return v;
}

void DisturbanceModel::validate(const Vec6& d_max) const {
  auto check = [&](const Vec6& v, double t) {
    if (!v.allFinite()) throw InvalidConfig("disturbance: non-finite wrench");
    for (int i = 0; i < 6; ++i) {
      if (d_max[i] > 0.0 && std::abs(v[i]) > d_max[i]) {
        throw InvalidConfig("disturbance exceeds the configured d_max bound at t=" +
                            std::to_string(t) + ", DOF " + std::to_string(i + 1));
      }
    }
  };
  check(constant, 0.0);
  double prev = -1.0;
  for (const auto& [tk, tau] : schedule) {
    if (tk <= prev) throw InvalidConfig("disturbance schedule times must be increasing");
    prev = tk;
    check(tau, tk);
  }
}

void SimConfig::validate() const {
  vehicle.validate();
  gains.validate();
  adaptation.validate();
  validate_trajectory(trajectory);
  disturbance.validate(adaptation.d_max);
  if (!(dt > 0.0)) throw InvalidConfig("integrator: dt must be > 0");
  if (!(tf >= 0.0)) throw InvalidConfig("integrator: tf must be >= 0");
  if (!(control_rate >= 0.0)) throw InvalidConfig("integrator: control_rate must be >= 0");
  if (!(cost_q.array() >= 0.0).all() || !(cost_r.array() >= 0.0).all())
    throw InvalidConfig("cost: Q and R must be >= 0 componentwise");
  if (!eta0.allFinite() || !nu0.allFinite() || !tauhat0.allFinite())
    throw InvalidConfig("initial state has non-finite entries");
  check_attitude(eta0, attitude_margin);
}

std::size_t SimConfig::step_count() const {
  return static_cast<std::size_t>(std::floor(tf / dt + 1e-9));
}

namespace {

struct StageEval {
  Vec6 eta_dot, nu_dot, tauhat_dot;
  Vec6 eta_d, tau, tau_d, s, gamma;
};

struct Held {
  bool active = false;
  Vec6 tau = Vec6::Zero();
  Vec6 gamma = Vec6::Zero();
};

StageEval eval_stage(const SimConfig& cfg, const VehicleModel& model, const SimState& st,
                     double t, double horizon, const Held& held) {
  if (!st.eta.allFinite() || !st.nu.allFinite() || !st.tau_hat.allFinite()) {
    throw NonFinite("simulation state left the finite range");
  }
  const double margin = cfg.attitude_margin;
  const ReferencePoint ref = reference_at(cfg.trajectory, std::min(t, horizon), horizon);
  const TrackingError te = tracking_error(st.eta, st.nu, ref, margin);

  StageEval ev;
  ev.eta_d = ref.eta;
  ev.s = sliding_surface(te.e, te.e_dot, cfg.gains.k1);
  ev.tau = held.active ? held.tau
                       : control_wrench(model, st.eta, st.nu, ref, cfg.gains, st.tau_hat, margin);
  ev.tau_d = cfg.disturbance.at(t);

  const StateDerivative sd = model.state_derivative(st.eta, st.nu, ev.tau, ev.tau_d, margin);
  ev.eta_dot = sd.eta_dot;
  ev.nu_dot = sd.nu_dot;

  const Vec6 b = adaptation_drive(model, st.eta, ev.s, margin);
  if (held.active) {
    ev.gamma = held.gamma;
  } else if (cfg.adaptation.mode == AdaptationMode::fuzzy &&
             cfg.adaptation.fis_input == FisInput::direct) {
    const Vec6 signal =
        kinematic_transform(st.eta, margin) * (model.mass_inverse() * ev.s);
    ev.gamma = adaptation_rates(cfg.adaptation, signal);
  } else {
    ev.gamma = adaptation_rates(cfg.adaptation, b);
  }
  ev.tauhat_dot = adaptation_derivative(ev.gamma, b, st.tau_hat, cfg.adaptation.d_max);
  return ev;
}

SimState advance(const SimState& st, const StageEval& ev, double h) {
  SimState out;
  out.eta = st.eta + h * ev.eta_dot;
  out.nu = st.nu + h * ev.nu_dot;
  out.tau_hat = st.tau_hat + h * ev.tauhat_dot;
  return out;
}

SimState rk4_step_impl(const SimConfig& cfg, const VehicleModel& model, const SimState& st,
                       double t, double horizon, const Held& held) {
  const double h = cfg.dt;
  const StageEval k1 = eval_stage(cfg, model, st, t, horizon, held);
  const StageEval k2 = eval_stage(cfg, model, advance(st, k1, h / 2), t + h / 2, horizon, held);
  const StageEval k3 = eval_stage(cfg, model, advance(st, k2, h / 2), t + h / 2, horizon, held);
  const StageEval k4 = eval_stage(cfg, model, advance(st, k3, h), t + h, horizon, held);

  SimState out;
  out.eta = st.eta + h / 6.0 * (k1.eta_dot + 2 * k2.eta_dot + 2 * k3.eta_dot + k4.eta_dot);
  out.nu = st.nu + h / 6.0 * (k1.nu_dot + 2 * k2.nu_dot + 2 * k3.nu_dot + k4.nu_dot);
  out.tau_hat =
      st.tau_hat + h / 6.0 * (k1.tauhat_dot + 2 * k2.tauhat_dot + 2 * k3.tauhat_dot + k4.tauhat_dot);
  if (!out.eta.allFinite() || !out.nu.allFinite() || !out.tau_hat.allFinite()) {
    throw NonFinite("simulation state left the finite range");
  }
  return out;
}

}  // namespace

SimState rk4_step(const SimConfig& cfg, const VehicleModel& model, const SimState& state,
                  double t) {
  return rk4_step_impl(cfg, model, state, t, cfg.tf + cfg.dt, Held{});
}

SimState rk4_step(const SimConfig& cfg, const SimState& state, double t) {
  return rk4_step(cfg, VehicleModel(cfg.vehicle), state, t);
}

SimLog run(const SimConfig& cfg) {
  cfg.validate();
  const VehicleModel model(cfg.vehicle);
  const double horizon = cfg.tf + cfg.dt;
  const std::size_t steps = cfg.step_count();

  SimState st;
  st.eta = cfg.eta0;
  st.nu = cfg.nu0;
  st.tau_hat = cfg.tauhat0;

  SimLog log;
  log.rows.reserve(steps + 1);

  Held held;
  const double control_period = cfg.control_rate > 0.0 ? 1.0 / cfg.control_rate : 0.0;
  double next_sample = 0.0;

  double prev_integrand = 0.0;
  double running = 0.0;

  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    try {
      if (control_period > 0.0 && t >= next_sample - 0.5 * cfg.dt) {
        // zero-order hold: sample the control law and rates, hold across stages
        const StageEval fresh = eval_stage(cfg, model, st, t, horizon, Held{});
        held.active = true;
        held.tau = fresh.tau;
        held.gamma = fresh.gamma;
        next_sample += control_period;
      }
      const StageEval ev = eval_stage(cfg, model, st, t, horizon, held);

      SimRecord row;
      row.t = t;
      row.eta = st.eta;
      row.nu = st.nu;
      row.eta_d = ev.eta_d;
      row.tau = ev.tau;
      row.tau_hat = st.tau_hat;
      row.tau_d = ev.tau_d;
      row.s = ev.s;
      row.gamma = ev.gamma;
      row.vc = 0.5 * ev.s.squaredNorm();
      const double integrand = ev.s.dot(cfg.cost_q.cwiseProduct(ev.s)) +
                               ev.tau.dot(cfg.cost_r.cwiseProduct(ev.tau));
      if (k > 0) running += 0.5 * cfg.dt * (prev_integrand + integrand);
      prev_integrand = integrand;
      row.running_cost = running;
      log.rows.push_back(row);

      if (k < steps) st = rk4_step_impl(cfg, model, st, t, horizon, held);
    } catch (const SingularAttitude& e) {
      throw SingularAttitude(std::string(e.what()) + " (failure at t=" + std::to_string(t) + ")");
    } catch (const NonFinite& e) {
      throw NonFinite(std::string(e.what()) + " (failure at t=" + std::to_string(t) + ")");
    }
  }
  return log;
}

double cost(const SimLog& log, const Vec6& q, const Vec6& r) {
  if (log.rows.empty()) throw EmptyLog("cost needs a non-empty log");
  double j = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < log.rows.size(); ++k) {
    const auto& row = log.rows[k];
    const double f = row.s.dot(q.cwiseProduct(row.s)) + row.tau.dot(r.cwiseProduct(row.tau));
    if (k > 0) j += 0.5 * (row.t - log.rows[k - 1].t) * (prev + f);
    prev = f;
  }
  return j;
}

Metrics metrics(const SimLog& log, const DisturbanceModel& disturbance, const Vec6& cost_q,
                const Vec6& cost_r) {
  if (log.rows.empty()) throw EmptyLog("metrics needs a non-empty log");

  const double t_end = log.rows.back().t;
  const double window_start = t_end - 10.0;

  Metrics m;
  Vec6 sq_sum = Vec6::Zero();
  Vec6 win_abs_err = Vec6::Zero();
  Vec6 win_abs_est = Vec6::Zero();
  std::size_t win_count = 0;
  double zmin = 0.0, zmax = 0.0, thmin = 0.0, thmax = 0.0;
  double prev_vc = 0.0;

  for (std::size_t k = 0; k < log.rows.size(); ++k) {
    const auto& row = log.rows[k];
    Vec6 e = row.eta - row.eta_d;
    e[5] = wrap_angle(e[5]);
    sq_sum += e.cwiseProduct(e);

    const double ze = e[2], the = e[4];
    if (k == 0) {
      zmin = zmax = ze;
      thmin = thmax = the;
    } else {
      zmin = std::min(zmin, ze);
      zmax = std::max(zmax, ze);
      thmin = std::min(thmin, the);
      thmax = std::max(thmax, the);
    }

    if (row.t >= window_start) {
      win_abs_err += e.cwiseAbs();
      win_abs_est += (row.tau_hat - disturbance.at(row.t)).cwiseAbs();
      ++win_count;
    }
    if (k > 0 && row.t >= 1.0 && row.vc > prev_vc + 1e-6) ++m.vc_violations;
    prev_vc = row.vc;
  }

  m.rms_error = (sq_sum / static_cast<double>(log.rows.size())).cwiseSqrt();
  if (win_count > 0) {
    m.final_mean_abs_error = win_abs_err / static_cast<double>(win_count);
    m.final_mean_abs_est_error = win_abs_est / static_cast<double>(win_count);
  }
  m.osc_amplitude_z = 0.5 * (zmax - zmin);
  m.osc_amplitude_theta = 0.5 * (thmax - thmin);
  m.total_cost = cost(log, cost_q, cost_r);
  return m;
}

}  // namespace rovtrack
