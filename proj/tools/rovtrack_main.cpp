#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rovtrack/config_io.hpp"
#include "rovtrack/pso.hpp"
#include "rovtrack/simulation.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rovtrack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSimFailure = 3;
constexpr int kExitOptimFailure = 4;

int max_threads() {
  if (const char* env = std::getenv("ROVTRACK_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void write_outputs(const SimLog& log, const SimConfig& cfg, const fs::path& out_dir,
                   bool svg, const std::string& suffix = "") {
  fs::create_directories(out_dir);
  write_log_csv(log, out_dir / ("log" + suffix + ".csv"));
  write_metrics_json(metrics(log, cfg.disturbance, cfg.cost_q, cfg.cost_r),
                     out_dir / ("metrics" + suffix + ".json"));
  if (svg) {
    write_timeseries_svg(log, out_dir / ("timeseries" + suffix + ".svg"));
    write_path_svg(log, 0, 1, out_dir / ("path_xy" + suffix + ".svg"));
    write_path_svg(log, 0, 2, out_dir / ("path_xz" + suffix + ".svg"));
  }
}

int cmd_simulate(const fs::path& config_path, const fs::path& out_dir, bool svg,
                 std::optional<std::uint64_t> seed) {
  SimConfig cfg;
  try {
    cfg = load_sim_config(config_path);
    if (seed) cfg.seed = *seed;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  SimLog log;
  try {
    log = run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "simulation failed: " << e.what() << "\n";
    return kExitSimFailure;
  }
  write_outputs(log, cfg, out_dir, svg);
  const Metrics m = metrics(log, cfg.disturbance, cfg.cost_q, cfg.cost_r);
  std::cout << "simulated " << log.rows.size() << " samples to t=" << log.rows.back().t
            << " s, cost " << m.total_cost << "\n";
  return kExitOk;
}

AdaptationConfig mode_config(const AdaptationConfig& base, const std::string& mode) {
  AdaptationConfig cfg = base;
  if (mode == "baseline") {
    cfg.mode = AdaptationMode::baseline;
  } else if (mode == "constant") {
    cfg.mode = AdaptationMode::constant_rate;
  } else if (mode == "fuzzy") {
    cfg.mode = AdaptationMode::fuzzy;
  } else {
    throw InvalidConfig("unknown controller mode '" + mode + "'");
  }
  cfg.validate();
  return cfg;
}

int cmd_compare(const fs::path& config_path, const fs::path& out_dir,
                const std::string& controllers, std::optional<std::uint64_t> seed) {
  SimConfig base;
  std::vector<std::string> modes;
  std::vector<SimConfig> mode_cfgs;
  try {
    base = load_sim_config(config_path);
    if (seed) base.seed = *seed;
    std::stringstream ss(controllers);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) modes.push_back(item);
    }
    if (modes.size() < 2) throw InvalidConfig("compare needs at least two controller modes");
    for (const auto& m : modes) {
      SimConfig cfg = base;
      cfg.adaptation = mode_config(base.adaptation, m);
      cfg.validate();
      mode_cfgs.push_back(std::move(cfg));
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  struct ModeResult {
    bool ok = false;
    std::string error;
    SimLog log;
  };
  std::vector<ModeResult> results(modes.size());
  const int threads = std::min<int>(max_threads(), static_cast<int>(modes.size()));
  auto run_mode = [&](std::size_t i) {
    try {
      results[i].log = run(mode_cfgs[i]);
      results[i].ok = true;
    } catch (const std::exception& e) {
      results[i].error = e.what();
    }
  };
  if (threads > 1) {
    std::vector<std::future<void>> futs;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      futs.push_back(std::async(std::launch::async, run_mode, i));
    }
    for (auto& f : futs) f.get();
  } else {
    for (std::size_t i = 0; i < modes.size(); ++i) run_mode(i);
  }

  fs::create_directories(out_dir);
  json comparison;
  bool any_failed = false;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    json entry;
    if (results[i].ok) {
      write_outputs(results[i].log, mode_cfgs[i], out_dir, false, "_" + modes[i]);
      const Metrics m =
          metrics(results[i].log, mode_cfgs[i].disturbance, base.cost_q, base.cost_r);
      entry["status"] = "ok";
      json err = json::array(), est = json::array();
      for (int k = 0; k < 6; ++k) {
        err.push_back(m.final_mean_abs_error[k]);
        est.push_back(m.final_mean_abs_est_error[k]);
      }
      entry["final_mean_abs_error"] = err;
      entry["final_mean_abs_est_error"] = est;
      entry["cost"] = m.total_cost;
    } else {
      any_failed = true;
      entry["status"] = "failed";
      entry["error"] = results[i].error;
    }
    comparison["modes"][modes[i]] = entry;
  }
  std::ofstream out(out_dir / "comparison.json", std::ios::binary);
  out << comparison.dump(2) << "\n";
  out.close();

  for (std::size_t i = 0; i < modes.size(); ++i) {
    std::cout << modes[i] << ": "
              << (results[i].ok ? "ok" : "FAILED (" + results[i].error + ")") << "\n";
  }
  return any_failed ? kExitSimFailure : kExitOk;
}

int cmd_tune(const fs::path& config_path, const fs::path& out_dir,
             std::optional<std::uint64_t> seed) {
  TuneConfig cfg;
  try {
    cfg = load_tune_config(config_path);
    if (seed) cfg.pso.seed = *seed;
    cfg.pso.threads = max_threads();
    cfg.pso.validate(12);
    cfg.sim.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  TuneResult result;
  try {
    result = tune_gains(cfg.sim, cfg.pso);
  } catch (const AllCandidatesFailed& e) {
    std::cerr << "optimization failed: " << e.what() << "\n";
    return kExitOptimFailure;
  }
  fs::create_directories(out_dir);
  write_gains_json(result.gains, result.pso.best_cost, cfg.pso.iters, out_dir / "gains.json");
  write_pso_history_csv(result.pso, out_dir / "pso_history.csv");
  std::cout << "best cost " << result.pso.best_cost << "\n";
  std::cout << "k1:";
  for (int i = 0; i < 6; ++i) std::cout << ' ' << result.gains.k1[i];
  std::cout << "\nk2:";
  for (int i = 0; i < 6; ++i) std::cout << ' ' << result.gains.k2[i];
  std::cout << "\n";
  return kExitOk;
}

int cmd_fis_surface(const fs::path& rulebase_path, const std::string& sweep,
                    const fs::path& out_dir) {
  double lo = 0.0, step = 0.0, hi = 0.0;
  std::optional<RuleBase> rb;
  try {
    const auto c1 = sweep.find(':');
    const auto c2 = sweep.rfind(':');
    if (c1 == std::string::npos || c2 == c1) throw InvalidConfig("sweep must be LO:STEP:HI");
    std::size_t used = 0;
    lo = std::stod(sweep.substr(0, c1), &used);
    step = std::stod(sweep.substr(c1 + 1, c2 - c1 - 1), &used);
    hi = std::stod(sweep.substr(c2 + 1), &used);
    if (!(step > 0.0) || hi < lo) throw InvalidConfig("sweep needs step > 0 and hi >= lo");
    rb = load_rulebase(rulebase_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  fs::create_directories(out_dir);
  std::ofstream out(out_dir / "fis_surface.csv", std::ios::binary);
  out << "x,gamma\n";
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = lo + step * static_cast<double>(k);
    out << format_double(x) << ',' << format_double(rb->infer(x)) << '\n';
  }
  std::cout << "wrote " << n << " rows\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trajectory-tracking workbench for a fully actuated 6-DOF ROV"};
  app.require_subcommand(1);

  std::string config, out_dir = ".", controllers = "baseline,constant,fuzzy";
  std::string rulebase, sweep = "0:0.01:8";
  bool svg = false;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config) cmd->add_option("--config", config, "input config path")->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "override the config seed");
  };

  auto* sim = app.add_subcommand("simulate", "run one closed-loop simulation");
  add_common(sim, true);
  sim->add_flag("--svg", svg, "also write SVG plots");

  auto* tune = app.add_subcommand("tune", "PSO gain tuning");
  add_common(tune, true);

  auto* cmp = app.add_subcommand("compare", "run several controller modes side by side");
  add_common(cmp, true);
  cmp->add_option("--controllers", controllers, "comma-separated mode list");

  auto* fis = app.add_subcommand("fis-surface", "tabulate a rule base response");
  fis->add_option("--rulebase", rulebase, "rule-base JSON path");
  fis->add_option("--config", config, "alias for --rulebase");
  fis->add_option("--sweep", sweep, "LO:STEP:HI");
  fis->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(config, out_dir, svg, seed);
    if (tune->parsed()) return cmd_tune(config, out_dir, seed);
    if (cmp->parsed()) return cmd_compare(config, out_dir, controllers, seed);
    if (fis->parsed()) {
      const std::string rb = rulebase.empty() ? config : rulebase;
      if (rb.empty()) {
        std::cerr << "config error: fis-surface needs --rulebase\n";
        return kExitConfig;
      }
      return cmd_fis_surface(rb, sweep, out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
