#pragma once

#include <filesystem>
#include <string>

#include "rovtrack/pso.hpp"
#include "rovtrack/simulation.hpp"

namespace rovtrack {

// JSON loaders. All throw InvalidConfig with a field/position diagnostic;
// file paths referenced inside a document resolve relative to that document.
VehicleParams load_vehicle(const std::filesystem::path& path);
RuleBase load_rulebase(const std::filesystem::path& path);
SimConfig load_sim_config(const std::filesystem::path& path);

struct TuneConfig {
  PsoConfig pso;
  SimConfig sim;
};
TuneConfig load_tune_config(const std::filesystem::path& path);

// SimLog CSV, one row per step, full double precision:
// t,eta1..eta6,nu1..nu6,etad1..etad6,tau1..tau6,tauhat1..tauhat6,
// taud1..taud6,s1..s6,gamma1..gamma6,Vc,Jrun
void write_log_csv(const SimLog& log, const std::filesystem::path& path);

void write_metrics_json(const Metrics& m, const std::filesystem::path& path);

// {"k1": [...], "k2": [...], "cost": c, "iterations": n}
void write_gains_json(const Gains& gains, double best_cost, int iterations,
                      const std::filesystem::path& path);

// iter,best_cost,k1_1..k1_6,k2_1..k2_6
void write_pso_history_csv(const PsoResult& result, const std::filesystem::path& path);

// Shortest decimal that round-trips the exact double.
std::string format_double(double v);

}  // namespace rovtrack
