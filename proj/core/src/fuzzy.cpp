#include "rovtrack/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rovtrack {

namespace {
constexpr double kDegeneratePeak = 1e-12;
// drop rules whose clip height cannot move the grid sums
constexpr double kNegligibleFiring = 1e-18;
}  // namespace

double membership(const GaussianMf& mf, double x) {
  if (!(mf.sigma > 0.0)) {
    throw InvalidMf("membership function needs sigma > 0, got " + std::to_string(mf.sigma));
  }
  const double d = (x - mf.center) / mf.sigma;
  return std::exp(-0.5 * d * d);
}

double cog_defuzz(std::span<const double> mu, double lo, double hi) {
  if (mu.empty()) throw DegenerateAggregate("empty membership grid");
  const double step = mu.size() > 1 ? (hi - lo) / static_cast<double>(mu.size() - 1) : 0.0;
  double num = 0.0, den = 0.0, peak = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double y = lo + step * static_cast<double>(k);
    num += y * mu[k];
    den += mu[k];
    peak = std::max(peak, mu[k]);
  }
  if (peak < kDegeneratePeak) {
    throw DegenerateAggregate("aggregate peak below 1e-12");
  }
  return num / den;
}

double default_antecedent_sigma(const std::vector<double>& centers, std::size_t index) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centers.size(); ++j) {
    if (j != index) d = std::min(d, std::abs(centers[j] - centers[index]));
  }
  if (!std::isfinite(d) || d <= 0.0) {
    throw InvalidConfig("rule base needs distinct antecedent centers to derive sigmas");
  }
  // adjacent antecedents cross at membership 1/8
  return d / (2.0 * std::sqrt(2.0 * std::log(8.0)));
}

double default_consequent_sigma(double center) { return 0.025 * center; }

RuleBase::RuleBase(std::vector<FuzzyRule> rules, double out_lo, double out_hi, int n_grid)
    : rules_(std::move(rules)), lo_(out_lo), hi_(out_hi), n_(n_grid) {
  if (rules_.empty()) throw InvalidConfig("rule base needs at least one rule");
  if (!(hi_ > lo_)) throw InvalidConfig("rule base output universe must have hi > lo");
  if (n_ < 101) throw InvalidConfig("rule base grid must have at least 101 points");
  for (const auto& r : rules_) {
    if (!(r.antecedent.sigma > 0.0) || !(r.consequent.sigma > 0.0))
      throw InvalidMf("rule membership sigma must be > 0");
    if (!(r.consequent.center > 0.0))
      throw InvalidConfig("consequent centers must be > 0 (adaptation rates stay positive)");
    if (r.consequent.center < lo_ || r.consequent.center > hi_)
      throw InvalidConfig("consequent center outside the output universe");
  }
  const double step = (hi_ - lo_) / static_cast<double>(n_ - 1);
  consequent_grid_.resize(rules_.size());
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    auto& row = consequent_grid_[i];
    row.resize(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) {
      row[static_cast<std::size_t>(k)] = membership(rules_[i].consequent, lo_ + step * k);
    }
  }
}

double RuleBase::infer(double x) const {
  if (!std::isfinite(x)) throw InvalidConfig("fuzzy inference input must be finite");

  double firing_buf[32];
  std::vector<double> firing_dyn;
  double* firing = firing_buf;
  if (rules_.size() > 32) {
    firing_dyn.resize(rules_.size());
    firing = firing_dyn.data();
  }
  double peak = 0.0;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    firing[i] = membership(rules_[i].antecedent, x);
    peak = std::max(peak, firing[i]);
  }
  if (peak < kDegeneratePeak) {
    // documented fallback: nearest rule's consequent center
    std::size_t best = 0;
    double bestd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const double d = std::abs(x - rules_[i].antecedent.center);
      if (d < bestd) {
        bestd = d;
        best = i;
      }
    }
    return rules_[best].consequent.center;
  }

  const auto n = static_cast<std::size_t>(n_);
  const double step = (hi_ - lo_) / static_cast<double>(n_ - 1);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double agg = 0.0;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (firing[i] < kNegligibleFiring) continue;
      agg = std::max(agg, std::min(firing[i], consequent_grid_[i][k]));
    }
    const double y = lo_ + step * static_cast<double>(k);
    num += y * agg;
    den += agg;
  }
  return num / den;
}

std::pair<RuleBase, RuleBase> default_rulebases() {
  auto build = [](const std::vector<double>& ac, const std::vector<double>& cc, double hi) {
    std::vector<FuzzyRule> rules;
    rules.reserve(ac.size());
    for (std::size_t i = 0; i < ac.size(); ++i) {
      FuzzyRule r;
      r.antecedent = {ac[i], default_antecedent_sigma(ac, i)};
      r.consequent = {cc[i], default_consequent_sigma(cc[i])};
      rules.push_back(r);
    }
    return RuleBase(std::move(rules), 0.0, hi);
  };
  return {build({5.0, 2.0, 1.0, 0.5}, {100.0, 50.0, 20.0, 10.0}, 120.0),
          build({3.0, 2.0, 1.0, 0.5}, {1.0, 0.5, 0.2, 0.1}, 1.2)};
}

}  // namespace rovtrack
