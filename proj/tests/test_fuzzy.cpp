#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rovtrack/fuzzy.hpp"

using namespace rovtrack;

namespace {

// independent dense-grid Mamdani evaluation (min implication, max
// aggregation, plain-sum COG), used as the oracle for infer()
double brute_force_infer(const RuleBase& rb, double x, int n) {
  double num = 0.0, den = 0.0;
  const double lo = rb.output_min(), hi = rb.output_max();
  for (int k = 0; k < n; ++k) {
    const double y = lo + (hi - lo) * static_cast<double>(k) / (n - 1);
    double agg = 0.0;
    for (const auto& r : rb.rules()) {
      const double f = membership(r.antecedent, x);
      agg = std::max(agg, std::min(f, membership(r.consequent, y)));
    }
    num += y * agg;
    den += agg;
  }
  return num / den;
}

}  // namespace

TEST_CASE("gaussian membership") {
  GaussianMf mf{2.0, 0.5};
  CHECK(membership(mf, 2.0) == doctest::Approx(1.0));
  CHECK(membership(mf, 2.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(membership(GaussianMf{1.0, 0.0}, 1.0), InvalidMf);
  CHECK_THROWS_AS(membership(GaussianMf{1.0, -0.2}, 1.0), InvalidMf);
}

TEST_CASE("cog of a single clipped gaussian is its center") {
  std::vector<double> mu(1001);
  const GaussianMf g{10.0, 1.5};
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double y = 20.0 * static_cast<double>(k) / 1000.0;
    mu[k] = std::min(0.37, membership(g, y));
  }
  CHECK(cog_defuzz(mu, 0.0, 20.0) == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("cog of two equal gaussians is the midpoint") {
  std::vector<double> mu(1001);
  const GaussianMf a{3.0, 0.5}, b{7.0, 0.5};
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double y = 10.0 * static_cast<double>(k) / 1000.0;
    mu[k] = std::max(std::min(0.6, membership(a, y)), std::min(0.6, membership(b, y)));
  }
  CHECK(cog_defuzz(mu, 0.0, 10.0) == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("cog rejects an all-zero grid") {
  std::vector<double> mu(101, 0.0);
  CHECK_THROWS_AS(cog_defuzz(mu, 0.0, 1.0), DegenerateAggregate);
}

TEST_CASE("default rule bases encode the shipped tables") {
  auto [tr, rot] = default_rulebases();
  REQUIRE(tr.rules().size() == 4);
  REQUIRE(rot.rules().size() == 4);
  const std::vector<double> tr_ac{5, 2, 1, 0.5}, tr_cc{100, 50, 20, 10};
  const std::vector<double> rot_ac{3, 2, 1, 0.5}, rot_cc{1, 0.5, 0.2, 0.1};
  for (int i = 0; i < 4; ++i) {
    CHECK(tr.rules()[i].antecedent.center == tr_ac[i]);
    CHECK(tr.rules()[i].consequent.center == tr_cc[i]);
    CHECK(rot.rules()[i].antecedent.center == rot_ac[i]);
    CHECK(rot.rules()[i].consequent.center == rot_cc[i]);
    CHECK(tr.rules()[i].consequent.center > 0.0);
    CHECK(rot.rules()[i].consequent.center > 0.0);
  }
  CHECK(tr.output_max() == 120.0);
  CHECK(rot.output_max() == doctest::Approx(1.2));
}

TEST_CASE("inference reproduces the rule consequents at the antecedent centers") {
  auto [tr, rot] = default_rulebases();
  const std::vector<double> tr_ac{5, 2, 1, 0.5}, tr_cc{100, 50, 20, 10};
  const std::vector<double> rot_ac{3, 2, 1, 0.5}, rot_cc{1, 0.5, 0.2, 0.1};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(tr.infer(tr_ac[i]) - tr_cc[i]) / tr_cc[i] < 0.05);
    CHECK(std::abs(rot.infer(rot_ac[i]) - rot_cc[i]) / rot_cc[i] < 0.05);
  }
}

TEST_CASE("inference between rule centers matches a dense-grid oracle") {
  auto [tr, rot] = default_rulebases();
  const double got = tr.infer(1.5);
  CHECK(got > 20.0);
  CHECK(got < 50.0);
  const double oracle = brute_force_infer(tr, 1.5, 100001);
  CHECK(std::abs(got - oracle) / oracle < 0.01);
}

TEST_CASE("inference is invariant under rule reordering") {
  auto [tr, rot] = default_rulebases();
  auto rules = tr.rules();
  std::rotate(rules.begin(), rules.begin() + 2, rules.end());
  std::swap(rules[0], rules[1]);
  const RuleBase shuffled(rules, tr.output_min(), tr.output_max(), tr.grid());
  for (double x : {0.0, 0.3, 0.75, 1.5, 2.5, 4.0, 5.0, 7.0}) {
    CHECK(shuffled.infer(x) == tr.infer(x));
  }
}

TEST_CASE("inference stays inside the hull of consequent centers") {
  auto [tr, rot] = default_rulebases();
  const double step = 120.0 / 1000.0;
  for (double x = 0.0; x <= 8.0; x += 0.05) {
    const double g = tr.infer(x);
    CHECK(g >= 10.0 - step);
    CHECK(g <= 100.0 + step);
  }
}

TEST_CASE("inference is monotone in the error magnitude") {
  auto [tr, rot] = default_rulebases();
  // COG on the fixed grid carries a small quantization jitter in the flat
  // stretches; the slack is 5e-4 of the universe span
  const double slack_tr = 5e-4 * 120.0;
  double prev = tr.infer(0.0);
  for (double x = 0.01; x <= 5.0 + 1e-9; x += 0.01) {
    const double g = tr.infer(x);
    CHECK(g >= prev - slack_tr);
    prev = g;
  }
  const double slack_rot = 5e-4 * 1.2;
  prev = rot.infer(0.0);
  for (double x = 0.01; x <= 3.0 + 1e-9; x += 0.01) {
    const double g = rot.infer(x);
    CHECK(g >= prev - slack_rot);
    prev = g;
  }
}

TEST_CASE("doubling the output grid moves the result by less than 0.5%") {
  auto [tr, rot] = default_rulebases();
  const RuleBase tr2 = tr.with_grid(2 * tr.grid() - 1);
  const RuleBase rot2 = rot.with_grid(2 * rot.grid() - 1);
  for (double x : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.5, 5.0}) {
    CHECK(std::abs(tr.infer(x) - tr2.infer(x)) / tr2.infer(x) < 0.005);
    CHECK(std::abs(rot.infer(x) - rot2.infer(x)) / rot2.infer(x) < 0.005);
  }
}

TEST_CASE("degenerate aggregate falls back to the nearest rule") {
  std::vector<FuzzyRule> rules{
      {{1.0, 0.01}, {10.0, 1.0}},
      {{2.0, 0.01}, {50.0, 1.0}},
  };
  const RuleBase rb(rules, 0.0, 120.0);
  CHECK(rb.infer(10.0) == 50.0);   // every firing underflows, nearest center is 2.0
  CHECK(rb.infer(-5.0) == 10.0);
}

TEST_CASE("rule base construction rejects bad shapes") {
  CHECK_THROWS_AS(RuleBase({}, 0.0, 1.0), InvalidConfig);
  std::vector<FuzzyRule> rules{{{1.0, 0.1}, {0.5, 0.05}}};
  CHECK_THROWS_AS(RuleBase(rules, 0.0, 1.0, 50), InvalidConfig);   // grid too coarse
  CHECK_THROWS_AS(RuleBase(rules, 1.0, 0.0), InvalidConfig);       // inverted universe
  std::vector<FuzzyRule> neg{{{1.0, 0.1}, {-0.5, 0.05}}};
  CHECK_THROWS_AS(RuleBase(neg, -1.0, 1.0), InvalidConfig);        // non-positive rate
  std::vector<FuzzyRule> outside{{{1.0, 0.1}, {5.0, 0.05}}};
  CHECK_THROWS_AS(RuleBase(outside, 0.0, 1.0), InvalidConfig);     // center outside universe
}
