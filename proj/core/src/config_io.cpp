#include "rovtrack/config_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rovtrack {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json parse_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(path.string() + ": " + e.what());
  }
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidConfig("field '" + where + "': " + what);
}

double get_num(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

double num_at(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return get_num(j.at(key), key);
}

Vec3 get_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = get_num(j.at(static_cast<std::size_t>(i)), where);
  return v;
}

Vec6 get_vec6(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 6) fail(where, "expected an array of 6 numbers");
  Vec6 v;
  for (int i = 0; i < 6; ++i) v[i] = get_num(j.at(static_cast<std::size_t>(i)), where);
  return v;
}

Vec6 vec6_at(const json& j, const std::string& key, const Vec6& fallback) {
  if (!j.contains(key)) return fallback;
  return get_vec6(j.at(key), key);
}

VehicleParams vehicle_from_json(const json& j) {
  VehicleParams p;
  if (!j.is_object()) fail("vehicle", "expected an object");
  p.mass = get_num(j.at("m"), "vehicle.m");
  p.volume = get_num(j.at("volume"), "vehicle.volume");
  p.inertia = Vec3(get_num(j.at("Ix"), "vehicle.Ix"), get_num(j.at("Iy"), "vehicle.Iy"),
                   get_num(j.at("Iz"), "vehicle.Iz"));
  p.inertia_products =
      Vec3(num_at(j, "Ixy", 0.0), num_at(j, "Iyz", 0.0), num_at(j, "Izx", 0.0));
  p.cog = get_vec3(j.at("cog"), "vehicle.cog");
  p.cob = get_vec3(j.at("cob"), "vehicle.cob");
  p.added_mass = get_vec6(j.at("added_mass"), "vehicle.added_mass");
  p.d_lin = get_vec6(j.at("d_lin"), "vehicle.d_lin");
  p.d_quad = get_vec6(j.at("d_quad"), "vehicle.d_quad");
  p.rho = num_at(j, "rho", 1000.0);
  p.g0 = num_at(j, "g0", 9.81);
  p.validate();
  return p;
}

GaussianMf mf_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("center")) fail(where, "expected {center, sigma?}");
  GaussianMf mf;
  mf.center = get_num(j.at("center"), where + ".center");
  mf.sigma = j.contains("sigma") ? get_num(j.at("sigma"), where + ".sigma") : 0.0;
  return mf;
}

RuleBase rulebase_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rules")) fail("rulebase", "expected {rules, output_universe}");
  const auto& jr = j.at("rules");
  if (!jr.is_array() || jr.empty()) fail("rulebase.rules", "expected a non-empty array");

  std::vector<FuzzyRule> rules;
  std::vector<double> acenters;
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const std::string where = "rulebase.rules[" + std::to_string(i) + "]";
    FuzzyRule r;
    r.antecedent = mf_from_json(jr.at(i).at("antecedent"), where + ".antecedent");
    r.consequent = mf_from_json(jr.at(i).at("consequent"), where + ".consequent");
    rules.push_back(r);
    acenters.push_back(r.antecedent.center);
  }
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].antecedent.sigma <= 0.0)
      rules[i].antecedent.sigma = default_antecedent_sigma(acenters, i);
    if (rules[i].consequent.sigma <= 0.0)
      rules[i].consequent.sigma = default_consequent_sigma(rules[i].consequent.center);
  }

  const auto& ju = j.at("output_universe");
  if (!ju.is_array() || ju.size() != 2) fail("rulebase.output_universe", "expected [lo, hi]");
  const double lo = get_num(ju.at(0), "rulebase.output_universe[0]");
  const double hi = get_num(ju.at(1), "rulebase.output_universe[1]");
  const int grid = j.contains("grid") ? j.at("grid").get<int>() : RuleBase::kDefaultGrid;
  return RuleBase(std::move(rules), lo, hi, grid);
}

Trajectory trajectory_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) fail("trajectory", "expected {type, ...}");
  const std::string type = j.at("type").get<std::string>();
  if (type == "straight_line") {
    StraightLine tr;
    tr.speed = get_vec3(j.at("speed"), "trajectory.speed");
    tr.heading = num_at(j, "heading", 0.0);
    if (j.contains("start")) tr.start = get_vec3(j.at("start"), "trajectory.start");
    return tr;
  }
  if (type == "waypoint_polyline") {
    WaypointPolyline tr;
    const auto& jw = j.at("waypoints");
    if (!jw.is_array() || jw.size() < 2) fail("trajectory.waypoints", "expected >= 2 waypoints");
    for (std::size_t i = 0; i < jw.size(); ++i) {
      tr.waypoints.push_back(get_vec3(jw.at(i), "trajectory.waypoints[" + std::to_string(i) + "]"));
    }
    tr.speed = get_num(j.at("speed"), "trajectory.speed");
    tr.heading = num_at(j, "heading", 0.0);
    if (j.contains("segment_headings")) {
      std::vector<double> hs;
      for (const auto& h : j.at("segment_headings")) {
        hs.push_back(get_num(h, "trajectory.segment_headings"));
      }
      tr.segment_headings = std::move(hs);
    }
    tr.blend = num_at(j, "blend", 2.0);
    return tr;
  }
  if (type == "hold") {
    HoldPose tr;
    tr.eta = get_vec6(j.at("eta"), "trajectory.eta");
    return tr;
  }
  fail("trajectory.type", "unknown type '" + type + "'");
}

AdaptationConfig adaptation_from_json(const json& j, const fs::path& base_dir) {
  AdaptationConfig cfg;
  const std::string mode = j.contains("mode") ? j.at("mode").get<std::string>() : "fuzzy";
  if (mode == "baseline") {
    cfg.mode = AdaptationMode::baseline;
  } else if (mode == "constant") {
    cfg.mode = AdaptationMode::constant_rate;
  } else if (mode == "fuzzy") {
    cfg.mode = AdaptationMode::fuzzy;
  } else {
    fail("adaptation.mode", "expected baseline|constant|fuzzy");
  }
  cfg.gamma = vec6_at(j, "gamma", Vec6::Zero());
  cfg.d_max = vec6_at(j, "d_max", cfg.d_max);

  auto load_base = [&](const char* key) -> std::shared_ptr<const RuleBase> {
    if (!j.contains(key)) return nullptr;
    const auto& v = j.at(key);
    if (v.is_string()) {
      return std::make_shared<const RuleBase>(
          load_rulebase(base_dir / fs::path(v.get<std::string>())));
    }
    return std::make_shared<const RuleBase>(rulebase_from_json(v));
  };
  cfg.translational = load_base("rulebase_translational");
  cfg.rotational = load_base("rulebase_rotational");
  if (cfg.mode == AdaptationMode::fuzzy && (!cfg.translational || !cfg.rotational)) {
    auto [tr, rot] = default_rulebases();
    if (!cfg.translational) cfg.translational = std::make_shared<const RuleBase>(std::move(tr));
    if (!cfg.rotational) cfg.rotational = std::make_shared<const RuleBase>(std::move(rot));
  }

  if (j.contains("fis_input")) {
    const std::string fi = j.at("fis_input").get<std::string>();
    if (fi == "transposed") {
      cfg.fis_input = FisInput::transposed;
    } else if (fi == "direct") {
      cfg.fis_input = FisInput::direct;
    } else {
      fail("adaptation.fis_input", "expected transposed|direct");
    }
  }
  return cfg;
}

SimConfig sim_config_from_json(const json& j, const fs::path& base_dir) {
  SimConfig cfg;
  if (j.contains("vehicle")) {
    const auto& jv = j.at("vehicle");
    if (jv.is_string()) {
      cfg.vehicle = load_vehicle(base_dir / fs::path(jv.get<std::string>()));
    } else {
      cfg.vehicle = vehicle_from_json(jv);
    }
  }
  if (j.contains("trajectory")) cfg.trajectory = trajectory_from_json(j.at("trajectory"));
  if (j.contains("disturbance")) {
    const auto& jd = j.at("disturbance");
    cfg.disturbance.constant = vec6_at(jd, "constant", Vec6::Zero());
    if (jd.contains("schedule")) {
      for (const auto& e : jd.at("schedule")) {
        cfg.disturbance.schedule.emplace_back(get_num(e.at("t"), "disturbance.schedule.t"),
                                              get_vec6(e.at("tau"), "disturbance.schedule.tau"));
      }
    }
  }
  if (j.contains("gains")) {
    cfg.gains.k1 = get_vec6(j.at("gains").at("k1"), "gains.k1");
    cfg.gains.k2 = get_vec6(j.at("gains").at("k2"), "gains.k2");
  }
  if (j.contains("adaptation")) cfg.adaptation = adaptation_from_json(j.at("adaptation"), base_dir);
  if (j.contains("integrator")) {
    const auto& ji = j.at("integrator");
    cfg.dt = num_at(ji, "dt", cfg.dt);
    cfg.tf = num_at(ji, "tf", cfg.tf);
    cfg.control_rate = num_at(ji, "control_rate", 0.0);
  }
  if (j.contains("cost")) {
    cfg.cost_q = vec6_at(j.at("cost"), "Q", cfg.cost_q);
    cfg.cost_r = vec6_at(j.at("cost"), "R", cfg.cost_r);
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("initial")) {
    const auto& ji = j.at("initial");
    cfg.eta0 = vec6_at(ji, "eta", Vec6::Zero());
    cfg.nu0 = vec6_at(ji, "nu", Vec6::Zero());
    cfg.tauhat0 = vec6_at(ji, "tau_hat", Vec6::Zero());
  }
  cfg.validate();
  return cfg;
}

json vec_to_json(const Vec6& v) {
  json a = json::array();
  for (int i = 0; i < 6; ++i) a.push_back(v[i]);
  return a;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidConfig("cannot write " + path.string());
  out << text;
}

}  // namespace

VehicleParams load_vehicle(const fs::path& path) {
  try {
    return vehicle_from_json(parse_file(path));
  } catch (const json::exception& e) {
    throw InvalidConfig(path.string() + ": " + e.what());
  }
}

RuleBase load_rulebase(const fs::path& path) {
  try {
    return rulebase_from_json(parse_file(path));
  } catch (const json::exception& e) {
    throw InvalidConfig(path.string() + ": " + e.what());
  }
}

SimConfig load_sim_config(const fs::path& path) {
  try {
    return sim_config_from_json(parse_file(path), path.parent_path());
  } catch (const json::exception& e) {
    throw InvalidConfig(path.string() + ": " + e.what());
  }
}

TuneConfig load_tune_config(const fs::path& path) try {
  const json j = parse_file(path);
  TuneConfig cfg;
  if (j.contains("pso")) {
    const auto& jp = j.at("pso");
    cfg.pso.swarm = static_cast<int>(num_at(jp, "n", 100));
    cfg.pso.iters = static_cast<int>(num_at(jp, "iters", 100));
    cfg.pso.inertia = num_at(jp, "w", cfg.pso.inertia);
    cfg.pso.cognitive = num_at(jp, "c1", cfg.pso.cognitive);
    cfg.pso.social = num_at(jp, "c2", cfg.pso.social);
    cfg.pso.velocity_clamp = num_at(jp, "vclamp", cfg.pso.velocity_clamp);
    if (jp.contains("seed")) cfg.pso.seed = jp.at("seed").get<std::uint64_t>();
    if (jp.contains("bounds")) {
      const auto& jb = jp.at("bounds");
      if (!jb.is_array() || jb.empty()) fail("pso.bounds", "expected [lo,hi] or [[lo,hi],...]");
      if (jb.at(0).is_number()) {
        if (jb.size() != 2) fail("pso.bounds", "expected [lo, hi]");
        cfg.pso.bounds = {{get_num(jb.at(0), "pso.bounds"), get_num(jb.at(1), "pso.bounds")}};
      } else {
        for (const auto& b : jb) {
          if (!b.is_array() || b.size() != 2) fail("pso.bounds", "expected [lo, hi] pairs");
          cfg.pso.bounds.emplace_back(get_num(b.at(0), "pso.bounds"),
                                      get_num(b.at(1), "pso.bounds"));
        }
      }
    }
  }
  if (cfg.pso.bounds.empty()) cfg.pso.bounds = {{0.1, 10.0}};
  if (j.contains("sim")) {
    cfg.sim = sim_config_from_json(j.at("sim"), path.parent_path());
  } else {
    cfg.sim.tf = 20.0;
    cfg.sim.disturbance.constant << -1, 1, 2, 0.1, 0.1, 0;
    cfg.sim.trajectory = StraightLine{Vec3(0.2, 0.2, 0.0), std::numbers::pi / 4.0, Vec3::Zero()};
  }
  return cfg;
} catch (const json::exception& e) {
  throw InvalidConfig(path.string() + ": " + e.what());
}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_log_csv(const SimLog& log, const fs::path& path) {
  std::ostringstream out;
  out << "t";
  const char* groups[] = {"eta", "nu", "etad", "tau", "tauhat", "taud", "s", "gamma"};
  for (const char* g : groups) {
    for (int i = 1; i <= 6; ++i) out << ',' << g << i;
  }
  out << ",Vc,Jrun\n";
  for (const auto& row : log.rows) {
    out << format_double(row.t);
    const Vec6* vecs[] = {&row.eta, &row.nu, &row.eta_d, &row.tau,
                          &row.tau_hat, &row.tau_d, &row.s, &row.gamma};
    for (const Vec6* v : vecs) {
      for (int i = 0; i < 6; ++i) out << ',' << format_double((*v)[i]);
    }
    out << ',' << format_double(row.vc) << ',' << format_double(row.running_cost) << '\n';
  }
  write_text(path, out.str());
}

void write_metrics_json(const Metrics& m, const fs::path& path) {
  json j;
  j["rms_error"] = vec_to_json(m.rms_error);
  j["final_mean_abs_error"] = vec_to_json(m.final_mean_abs_error);
  j["final_mean_abs_est_error"] = vec_to_json(m.final_mean_abs_est_error);
  j["osc_amplitude_z"] = m.osc_amplitude_z;
  j["osc_amplitude_theta"] = m.osc_amplitude_theta;
  j["vc_violations"] = m.vc_violations;
  j["cost"] = m.total_cost;
  write_text(path, j.dump(2) + "\n");
}

void write_gains_json(const Gains& gains, double best_cost, int iterations,
                      const fs::path& path) {
  json j;
  j["k1"] = vec_to_json(gains.k1);
  j["k2"] = vec_to_json(gains.k2);
  j["cost"] = best_cost;
  j["iterations"] = iterations;
  write_text(path, j.dump(2) + "\n");
}

void write_pso_history_csv(const PsoResult& result, const fs::path& path) {
  std::ostringstream out;
  out << "iter,best_cost";
  for (int i = 1; i <= 6; ++i) out << ",k1_" << i;
  for (int i = 1; i <= 6; ++i) out << ",k2_" << i;
  out << '\n';
  for (std::size_t k = 0; k < result.cost_history.size(); ++k) {
    out << (k + 1) << ',' << format_double(result.cost_history[k]);
    const auto& pos = result.position_history[k];
    for (int i = 0; i < pos.size(); ++i) out << ',' << format_double(pos[i]);
    out << '\n';
  }
  write_text(path, out.str());
}

}  // namespace rovtrack
