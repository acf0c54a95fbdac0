#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rovtrack/simulation.hpp"
#include "rovtrack/types.hpp"

namespace rovtrack {

struct PsoConfig {
  int swarm = 100;
  int iters = 100;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  // one [lo, hi] pair per dimension; a single pair broadcasts to every dimension
  std::vector<std::pair<double, double>> bounds;
  double velocity_clamp = 0.2;  // fraction of the per-dimension range
  std::uint64_t seed = 0;
  int threads = 1;  // objective evaluations per iteration run on this many workers

  void validate(int dims) const;
};

struct Particle {
  Eigen::VectorXd position;
  Eigen::VectorXd velocity;
  Eigen::VectorXd best_position;
  double best_cost = 0.0;
};

struct PsoResult {
  Eigen::VectorXd best_position;
  double best_cost = 0.0;
  std::vector<double> cost_history;                  // best cost after each iteration
  std::vector<Eigen::VectorXd> position_history;     // global best after each iteration
  long objective_calls = 0;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

// Global-best particle swarm over a bounded box. Positions start uniform in
// the bounds, velocities at zero; velocities are clamped per dimension and
// positions re-clamped to the box after every update. Non-finite objective
// values count as +inf. Deterministic for a fixed seed: the per-iteration
// random draws are generated up front, and parallel objective evaluation
// reduces in particle order.
PsoResult pso_minimize(const Objective& objective, const PsoConfig& cfg, int dims);

struct TuneResult {
  Gains gains;
  PsoResult pso;
};

// Gain-tuning pipeline: each candidate position is [k1(6), k2(6)], scored by
// the quadratic cost of a closed-loop run of the template config. Runs that
// fail (singular attitude, non-finite state) score +inf. Throws
// AllCandidatesFailed when the whole initial swarm is infeasible.
TuneResult tune_gains(const SimConfig& sim_template, const PsoConfig& cfg);

}  // namespace rovtrack
