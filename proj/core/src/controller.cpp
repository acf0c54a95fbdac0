#include "rovtrack/controller.hpp"

namespace rovtrack {

void Gains::validate() const {
  if (!(k1.array() > 0.0).all() || !(k2.array() > 0.0).all()) {
    throw InvalidConfig("gains: k1 and k2 diagonals must be > 0");
  }
}

Gains Gains::defaults() {
  Gains g;
  g.k1 << 10.0, 1.0, 5.9, 1.7, 5.8, 0.8;
  g.k2 << 5.2, 10.0, 1.0, 5.8, 1.9, 5.5;
  return g;
}

void AdaptationConfig::validate() const {
  if (mode == AdaptationMode::constant_rate && !(gamma.array() > 0.0).all()) {
    throw InvalidConfig("adaptation: constant mode needs gamma > 0 componentwise");
  }
  if (mode == AdaptationMode::fuzzy && (!translational || !rotational)) {
    throw InvalidConfig("adaptation: fuzzy mode needs both rule bases");
  }
  if (!(d_max.array() >= 0.0).all()) {
    throw InvalidConfig("adaptation: d_max must be >= 0 componentwise");
  }
}

AdaptationConfig AdaptationConfig::fuzzy_defaults() {
  AdaptationConfig cfg;
  cfg.mode = AdaptationMode::fuzzy;
  auto [tr, rot] = default_rulebases();
  cfg.translational = std::make_shared<const RuleBase>(std::move(tr));
  cfg.rotational = std::make_shared<const RuleBase>(std::move(rot));
  return cfg;
}

AdaptationConfig AdaptationConfig::baseline() {
  AdaptationConfig cfg;
  cfg.mode = AdaptationMode::baseline;
  return cfg;
}

AdaptationConfig AdaptationConfig::constant(const Vec6& gamma) {
  AdaptationConfig cfg;
  cfg.mode = AdaptationMode::constant_rate;
  cfg.gamma = gamma;
  return cfg;
}

TrackingError tracking_error(const Vec6& eta, const Vec6& nu, const ReferencePoint& ref,
                             double margin) {
  const Mat6 j = kinematic_transform(eta, margin);
  TrackingError te;
  te.e = eta - ref.eta;
  te.e[5] = wrap_angle(te.e[5]);
  te.e_dot = j * nu - ref.eta_dot;
  return te;
}

Vec6 sliding_surface(const Vec6& e, const Vec6& e_dot, const Vec6& k1) {
  return e_dot + k1.cwiseProduct(e);
}

Vec6 control_wrench(const VehicleModel& model, const Vec6& eta, const Vec6& nu,
                    const ReferencePoint& ref, const Gains& gains, const Vec6& tau_hat,
                    double margin) {
  const TrackingError te = tracking_error(eta, nu, ref, margin);
  const Vec6 s = sliding_surface(te.e, te.e_dot, gains.k1);
  const Vec6 accel_ff = transform_rate(eta, nu, margin) * nu;
  const Vec6 target = ref.eta_ddot - gains.k1.cwiseProduct(te.e_dot) -
                      gains.k2.cwiseProduct(s) - accel_ff;
  const Mat6 jinv = detail::kinematic_transform_inverse(eta, margin);
  const Vec6 nu_cmd = model.mass() * (jinv * target);
  return nu_cmd + (coriolis_matrix(model.params(), nu) + damping_matrix(model.params(), nu)) * nu +
         restoring_vector(model.params(), eta) - tau_hat;
}

Vec6 adaptation_drive(const VehicleModel& model, const Vec6& eta, const Vec6& s, double margin) {
  const Mat6 j = kinematic_transform(eta, margin);
  return model.mass_inverse() * (j.transpose() * s);
}

Vec6 adaptation_rates(const AdaptationConfig& cfg, const Vec6& signal) {
  switch (cfg.mode) {
    case AdaptationMode::baseline:
      return Vec6::Zero();
    case AdaptationMode::constant_rate:
      return cfg.gamma;
    case AdaptationMode::fuzzy: {
      Vec6 gamma;
      for (int i = 0; i < 3; ++i) gamma[i] = cfg.translational->infer(std::abs(signal[i]));
      for (int i = 3; i < 6; ++i) gamma[i] = cfg.rotational->infer(std::abs(signal[i]));
      return gamma;
    }
  }
  return Vec6::Zero();
}

Vec6 adaptation_derivative(const Vec6& gamma, const Vec6& b, const Vec6& tau_hat,
                           const Vec6& d_max) {
  Vec6 dot = gamma.cwiseProduct(b);
  for (int i = 0; i < 6; ++i) {
    if (d_max[i] > 0.0) {
      if (tau_hat[i] >= d_max[i] && dot[i] > 0.0) dot[i] = 0.0;
      if (tau_hat[i] <= -d_max[i] && dot[i] < 0.0) dot[i] = 0.0;
    }
  }
  return dot;
}

}  // namespace rovtrack
