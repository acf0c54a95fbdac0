#include "rovtrack/pso.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace rovtrack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double next_uniform(std::mt19937_64& rng) {
  // 53-bit mantissa draw; identical across platforms, unlike
  // std::uniform_real_distribution
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Evaluate the objective for every particle, in index order when serial and
// with an index-ordered reduction when parallel.
void evaluate_all(const Objective& objective, const std::vector<Eigen::VectorXd>& positions,
                  std::vector<double>& costs, int threads) {
  const std::size_t n = positions.size();
  costs.resize(n);
  auto eval_one = [&](std::size_t i) {
    double v;
    try {
      v = objective(positions[i]);
    } catch (const SingularAttitude&) {
      v = kInf;
    } catch (const NonFinite&) {
      v = kInf;
    }
    costs[i] = std::isfinite(v) ? v : kInf;
  };
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) eval_one(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) eval_one(i);
  };
  std::vector<std::thread> pool;
  const int nw = std::min<int>(threads, static_cast<int>(n));
  pool.reserve(static_cast<std::size_t>(nw));
  for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

void PsoConfig::validate(int dims) const {
  if (swarm < 1) throw InvalidConfig("pso: swarm size must be >= 1");
  if (iters < 1) throw InvalidConfig("pso: iteration count must be >= 1");
  if (!(inertia >= 0.0) || inertia >= 1.0) throw InvalidConfig("pso: inertia must be in [0, 1)");
  if (!(cognitive >= 0.0) || !(social >= 0.0))
    throw InvalidConfig("pso: cognitive/social weights must be >= 0");
  if (!(velocity_clamp > 0.0)) throw InvalidConfig("pso: velocity clamp must be > 0");
  if (bounds.empty() || (bounds.size() != 1 && bounds.size() != static_cast<std::size_t>(dims)))
    throw InvalidConfig("pso: need one bounds pair, or one per dimension");
  for (const auto& [lo, hi] : bounds) {
    if (!(lo < hi)) throw InvalidConfig("pso: bounds need lo < hi");
  }
}

PsoResult pso_minimize(const Objective& objective, const PsoConfig& cfg, int dims) {
  cfg.validate(dims);
  const std::size_t n = static_cast<std::size_t>(cfg.swarm);
  const std::size_t d = static_cast<std::size_t>(dims);

  Eigen::VectorXd lo(dims), hi(dims), vmax(dims);
  for (int k = 0; k < dims; ++k) {
    const auto& b = cfg.bounds.size() == 1 ? cfg.bounds[0] : cfg.bounds[static_cast<std::size_t>(k)];
    lo[k] = b.first;
    hi[k] = b.second;
    vmax[k] = cfg.velocity_clamp * (b.second - b.first);
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<Particle> swarm(n);
  std::vector<Eigen::VectorXd> positions(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = swarm[i];
    p.position.resize(dims);
    for (std::size_t k = 0; k < d; ++k) {
      p.position[static_cast<long>(k)] =
          lo[static_cast<long>(k)] +
          next_uniform(rng) * (hi[static_cast<long>(k)] - lo[static_cast<long>(k)]);
    }
    p.velocity = Eigen::VectorXd::Zero(dims);
    positions[i] = p.position;
  }

  PsoResult res;
  std::vector<double> costs;
  evaluate_all(objective, positions, costs, cfg.threads);
  res.objective_calls = static_cast<long>(n);

  res.best_cost = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    swarm[i].best_position = swarm[i].position;
    swarm[i].best_cost = costs[i];
    if (costs[i] < res.best_cost) {
      res.best_cost = costs[i];
      res.best_position = swarm[i].position;
    }
  }
  if (!std::isfinite(res.best_cost)) {
    throw AllCandidatesFailed("every particle in the initial swarm scored +inf");
  }

  std::vector<double> r1(n * d), r2(n * d);
  for (int iter = 0; iter < cfg.iters; ++iter) {
    for (std::size_t k = 0; k < n * d; ++k) {
      r1[k] = next_uniform(rng);
      r2[k] = next_uniform(rng);
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto& p = swarm[i];
      for (std::size_t k = 0; k < d; ++k) {
        const long kk = static_cast<long>(k);
        double v = cfg.inertia * p.velocity[kk] +
                   cfg.cognitive * r1[i * d + k] * (p.best_position[kk] - p.position[kk]) +
                   cfg.social * r2[i * d + k] * (res.best_position[kk] - p.position[kk]);
        v = std::clamp(v, -vmax[kk], vmax[kk]);
        p.velocity[kk] = v;
        p.position[kk] = std::clamp(p.position[kk] + v, lo[kk], hi[kk]);
      }
      positions[i] = p.position;
    }
    evaluate_all(objective, positions, costs, cfg.threads);
    res.objective_calls += static_cast<long>(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& p = swarm[i];
      if (costs[i] < p.best_cost) {
        p.best_cost = costs[i];
        p.best_position = p.position;
      }
      if (costs[i] < res.best_cost) {
        res.best_cost = costs[i];
        res.best_position = p.position;
      }
    }
    res.cost_history.push_back(res.best_cost);
    res.position_history.push_back(res.best_position);
  }
  return res;
}

TuneResult tune_gains(const SimConfig& sim_template, const PsoConfig& cfg) {
  sim_template.validate();
  const Objective objective = [&sim_template](const Eigen::VectorXd& x) {
    SimConfig sc = sim_template;
    sc.gains.k1 = x.head<6>();
    sc.gains.k2 = x.tail<6>();
    const SimLog log = run(sc);
    return cost(log, sc.cost_q, sc.cost_r);
  };
  PsoResult pso = pso_minimize(objective, cfg, 12);
  TuneResult out;
  out.gains.k1 = pso.best_position.head<6>();
  out.gains.k2 = pso.best_position.tail<6>();
  out.pso = std::move(pso);
  return out;
}

}  // namespace rovtrack
