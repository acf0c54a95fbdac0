#include <benchmark/benchmark.h>

#include <numbers>

#include "rovtrack/simulation.hpp"

using namespace rovtrack;

namespace {

Vec6 sample_pose() {
  Vec6 eta;
  eta << 1.2, -0.7, 0.4, 0.15, -0.2, 0.9;
  return eta;
}

Vec6 sample_velocity() {
  Vec6 nu;
  nu << 0.3, -0.1, 0.2, 0.05, -0.02, 0.1;
  return nu;
}

SimConfig line_config() {
  SimConfig cfg;
  cfg.trajectory = StraightLine{Vec3(0.2, 0.2, 0.0), std::numbers::pi / 4.0, Vec3::Zero()};
  cfg.disturbance.constant << -1, 1, 2, 0.1, 0.1, 0;
  return cfg;
}

void KinematicTransform(benchmark::State& state) {
  const Vec6 eta = sample_pose();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kinematic_transform(eta));
  }
}
BENCHMARK(KinematicTransform);

void TransformRate(benchmark::State& state) {
  const Vec6 eta = sample_pose();
  const Vec6 nu = sample_velocity();
  for (auto _ : state) {
    benchmark::DoNotOptimize(transform_rate(eta, nu));
  }
}
BENCHMARK(TransformRate);

void PlantDerivative(benchmark::State& state) {
  const VehicleModel model(VehicleParams::bluerov2_heavy());
  const Vec6 eta = sample_pose();
  const Vec6 nu = sample_velocity();
  const Vec6 tau = Vec6::Ones();
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.state_derivative(eta, nu, tau, Vec6::Zero()));
  }
}
BENCHMARK(PlantDerivative);

void ControlWrench(benchmark::State& state) {
  const VehicleModel model(VehicleParams::bluerov2_heavy());
  const Vec6 eta = sample_pose();
  const Vec6 nu = sample_velocity();
  ReferencePoint ref;
  ref.eta_dot << 0.2, 0.2, 0, 0, 0, 0;
  const Gains g = Gains::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(control_wrench(model, eta, nu, ref, g, Vec6::Zero()));
  }
}
BENCHMARK(ControlWrench);

void FuzzyInfer(benchmark::State& state) {
  auto [tr, rot] = default_rulebases();
  double x = 0.0;
  for (auto _ : state) {
    x += 0.001;
    if (x > 6.0) x = 0.0;
    benchmark::DoNotOptimize(tr.infer(x));
  }
}
BENCHMARK(FuzzyInfer);

void Rk4Step(benchmark::State& state) {
  const SimConfig cfg = line_config();
  const VehicleModel model(cfg.vehicle);
  SimState st;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk4_step(cfg, model, st, 0.0));
  }
}
BENCHMARK(Rk4Step);

void RunOneSecond(benchmark::State& state) {
  SimConfig cfg = line_config();
  cfg.tf = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(cfg));
  }
}
BENCHMARK(RunOneSecond);

}  // namespace

BENCHMARK_MAIN();
