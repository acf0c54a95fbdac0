#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rovtrack/types.hpp"

namespace rovtrack {

struct GaussianMf {
  double center = 0.0;
  double sigma = 1.0;
};

// exp(-(x-c)^2 / (2 sigma^2)). Throws InvalidMf for sigma <= 0.
double membership(const GaussianMf& mf, double x);

struct FuzzyRule {
  GaussianMf antecedent;  // over the error universe
  GaussianMf consequent;  // over the adaptation-rate universe
};

// Center-of-gravity of a sampled membership over [lo, hi]:
// sum(y_k mu_k) / sum(mu_k) on the uniform grid.
// Throws DegenerateAggregate when every sample is below 1e-12.
double cog_defuzz(std::span<const double> mu, double lo, double hi);

// Sigma defaults when a rule-base file omits them: antecedents get
// sigma = d / (2 sqrt(2 ln 8)) with d the distance to the nearest neighboring
// antecedent center (adjacent memberships cross at 0.125); consequents get
// sigma = 2.5% of the consequent center.
double default_antecedent_sigma(const std::vector<double>& centers, std::size_t index);
double default_consequent_sigma(double center);

// Immutable Mamdani rule base: min implication, max aggregation, COG
// defuzzification on a uniform output grid. Inference is pure and safe to
// call concurrently.
class RuleBase {
 public:
  static constexpr int kDefaultGrid = 1001;

  RuleBase(std::vector<FuzzyRule> rules, double out_lo, double out_hi,
           int n_grid = kDefaultGrid);

  // Mamdani pipeline for a crisp input. When the aggregate peak falls below
  // 1e-12 the consequent center of the rule with the nearest antecedent
  // center is returned instead of a COG of numerical noise.
  double infer(double x) const;

  const std::vector<FuzzyRule>& rules() const { return rules_; }
  double output_min() const { return lo_; }
  double output_max() const { return hi_; }
  int grid() const { return n_; }

  RuleBase with_grid(int n_grid) const { return RuleBase(rules_, lo_, hi_, n_grid); }

 private:
  std::vector<FuzzyRule> rules_;
  double lo_;
  double hi_;
  int n_;
  // consequent membership pre-sampled on the output grid, one row per rule
  std::vector<std::vector<double>> consequent_grid_;
};

// The shipped per-DOF-group rule bases: translational (surge/sway/heave)
// antecedent centers {5, 2, 1, 0.5} -> rates {100, 50, 20, 10} on [0, 120];
// rotational (roll/pitch/yaw) centers {3, 2, 1, 0.5} -> {1, 0.5, 0.2, 0.1}
// on [0, 1.2].
std::pair<RuleBase, RuleBase> default_rulebases();

}  // namespace rovtrack
