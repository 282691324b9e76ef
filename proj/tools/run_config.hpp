#pragma once

// Flat run configuration for the soaran tool. Layers, lowest first: built-in
// defaults, the JSON file, SOARAN_* environment variables, command-line flags.

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "soaran/error.hpp"
#include "soaran/experiment.hpp"
#include "soaran/model.hpp"
#include "soaran/scenario.hpp"

namespace soaran::cli {

using nlohmann::json;

enum class KeyType { integer, unsigned_int, real, boolean, text };

// Every accepted key and its type; anything else is a ConfigError.
inline const std::map<std::string, KeyType>& config_schema() {
  static const std::map<std::string, KeyType> schema{
      {"seed", KeyType::unsigned_int},
      {"experiment", KeyType::text},
      {"loads", KeyType::text},
      {"utility", KeyType::text},
      {"out", KeyType::text},
      {"trace", KeyType::boolean},
      {"timing", KeyType::boolean},
      {"jobs", KeyType::unsigned_int},
      {"desk_scale", KeyType::boolean},
      {"instance", KeyType::text},
      {"epsilon", KeyType::real},
      {"mu", KeyType::real},
      {"t0", KeyType::real},
      {"inner_tol", KeyType::real},
      {"max_inner_iters", KeyType::unsigned_int},
      {"max_outer_iters", KeyType::unsigned_int},
      {"interior_shift", KeyType::real},
      {"num_elements", KeyType::unsigned_int},
      {"num_entities", KeyType::unsigned_int},
      {"num_apps", KeyType::unsigned_int},
      {"num_flows", KeyType::unsigned_int},
      {"qoe_min", KeyType::real},
      {"qoe_max", KeyType::real},
      {"channel_min", KeyType::real},
      {"channel_max", KeyType::real},
      {"capacity_min", KeyType::real},
      {"capacity_max", KeyType::real},
      {"bw_min", KeyType::real},
      {"bw_max", KeyType::real},
      {"num_focus_apps", KeyType::unsigned_int},
      {"focus_min_share", KeyType::real},
      {"focus_max_share", KeyType::real},
      {"other_min_share", KeyType::real},
      {"other_max_share", KeyType::real},
      {"focus_app", KeyType::unsigned_int},
      {"hotspot_flows", KeyType::unsigned_int},
      {"hotspot_entities", KeyType::unsigned_int},
      {"hotspot_elements", KeyType::unsigned_int},
      {"hotspot_mean_bw", KeyType::real},
      {"per_bs_fraction", KeyType::real},
      {"net_min_fraction", KeyType::real},
      {"net_max_fraction", KeyType::real},
      {"log_floor", KeyType::real},
  };
  return schema;
}

// Converts a raw value (string from env/flags, or JSON from a file) to the
// key's type.
inline json coerce(const std::string& key, const json& raw) {
  const auto& schema = config_schema();
  const auto it = schema.find(key);
  if (it == schema.end()) throw ConfigError("unknown config key '" + key + "'");
  const KeyType type = it->second;
  auto bad = [&] {
    return ConfigError("config key '" + key + "': invalid value " + raw.dump());
  };
  if (!raw.is_string()) {
    switch (type) {
      case KeyType::integer:
        if (raw.is_number_integer()) return raw;
        break;
      case KeyType::unsigned_int:
        if (raw.is_number_unsigned()) return raw;
        break;
      case KeyType::real:
        if (raw.is_number()) return json(raw.get<double>());
        break;
      case KeyType::boolean:
        if (raw.is_boolean()) return raw;
        break;
      case KeyType::text:
        break;
    }
    throw bad();
  }
  const std::string s = raw.get<std::string>();
  if (type == KeyType::text) return raw;
  if (type == KeyType::boolean) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw bad();
  }
  try {
    std::size_t used = 0;
    json out;
    if (type == KeyType::real) {
      out = std::stod(s, &used);
    } else if (type == KeyType::unsigned_int) {
      if (!s.empty() && s.front() == '-') throw bad();
      out = static_cast<std::uint64_t>(std::stoull(s, &used));
    } else {
      out = static_cast<std::int64_t>(std::stoll(s, &used));
    }
    if (used != s.size()) throw bad();
    return out;
  } catch (const std::logic_error&) {
    throw bad();
  }
}

class ConfigLayers {
 public:
  void set(const std::string& key, const json& raw) { flat_[key] = coerce(key, raw); }

  void merge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) {
      throw ConfigError("config file '" + path + "' must hold a flat object");
    }
    for (const auto& [key, value] : doc.items()) {
      if (value.is_structured()) {
        throw ConfigError("config key '" + key + "' must be a scalar");
      }
      set(key, value);
    }
  }

  // SOARAN_EPSILON overrides "epsilon" and so on.
  void merge_env(const char* prefix = "SOARAN_") {
    for (const auto& [key, type] : config_schema()) {
      std::string name = prefix;
      for (char c : key) name.push_back(static_cast<char>(std::toupper(c)));
      if (const char* v = std::getenv(name.c_str())) set(key, std::string(v));
    }
  }

  const json& flat() const { return flat_; }

 private:
  json flat_ = json::object();
};

enum class ExperimentChoice { utility, hotspot, single_solve };

inline std::string_view to_string(ExperimentChoice c) noexcept {
  switch (c) {
    case ExperimentChoice::utility: return "utility";
    case ExperimentChoice::hotspot: return "hotspot";
    case ExperimentChoice::single_solve: return "single-solve";
  }
  return "unknown";
}

struct RunConfig {
  std::uint64_t seed = 0;
  ExperimentChoice experiment = ExperimentChoice::utility;
  std::vector<double> loads;
  std::vector<UtilityKind> utility_kinds;
  std::string out_dir = "out";
  bool trace = false;
  std::optional<std::string> instance_path;
  ScenarioParams scenario;
  ExperimentSpec spec;
  json echo;  // fully resolved flat config
};

// "A..B" expands to the integers A, A+1, ..., B; "3" is a single load.
inline std::vector<double> parse_loads(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw ConfigError("");
      return {v};
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const long lo = std::stol(a, &used);
    if (used != a.size()) throw ConfigError("");
    const long hi = std::stol(b, &used);
    if (used != b.size() || lo < 1 || hi < lo) throw ConfigError("");
    std::vector<double> out;
    for (long v = lo; v <= hi; ++v) out.push_back(static_cast<double>(v));
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config key 'loads': expected N or A..B with 1 <= A <= "
                      "B, got '" + text + "'");
  }
}

inline RunConfig resolve(const json& flat) {
  auto get = [&](const char* key) -> const json* {
    const auto it = flat.find(key);
    return it == flat.end() ? nullptr : &*it;
  };
  auto real = [&](const char* key, double& dst) {
    if (const json* v = get(key)) dst = v->get<double>();
  };
  auto count = [&](const char* key, std::size_t& dst) {
    if (const json* v = get(key)) dst = v->get<std::size_t>();
  };

  RunConfig cfg;
  const json* seed = get("seed");
  if (!seed) {
    throw ConfigError("config key 'seed' is required (no clock seeding)");
  }
  cfg.seed = seed->get<std::uint64_t>();

  const std::string exp =
      get("experiment") ? get("experiment")->get<std::string>() : "utility";
  if (exp == "utility") {
    cfg.experiment = ExperimentChoice::utility;
  } else if (exp == "hotspot") {
    cfg.experiment = ExperimentChoice::hotspot;
  } else if (exp == "single-solve") {
    cfg.experiment = ExperimentChoice::single_solve;
  } else {
    throw ConfigError("config key 'experiment': unknown value '" + exp + "'");
  }

  const bool desk = get("desk_scale") && get("desk_scale")->get<bool>();
  cfg.scenario = desk ? ScenarioParams::desk_scale()
                      : ScenarioParams::full_scale();
  ScenarioParams& p = cfg.scenario;
  count("num_elements", p.num_elements);
  count("num_entities", p.num_entities);
  count("num_apps", p.num_apps);
  count("num_flows", p.num_flows);
  real("qoe_min", p.qoe_min);
  real("qoe_max", p.qoe_max);
  real("channel_min", p.channel_min);
  real("channel_max", p.channel_max);
  real("capacity_min", p.capacity_min);
  real("capacity_max", p.capacity_max);
  real("bw_min", p.bw_min);
  real("bw_max", p.bw_max);
  count("num_focus_apps", p.num_focus_apps);
  real("focus_min_share", p.focus_min_share);
  real("focus_max_share", p.focus_max_share);
  real("other_min_share", p.other_min_share);
  real("other_max_share", p.other_max_share);

  ExperimentSpec& s = cfg.spec;
  s.kind = cfg.experiment == ExperimentChoice::hotspot
               ? ExperimentKind::hotspot
               : ExperimentKind::utility;
  s.hotspot = desk ? HotspotParams::desk_scale() : HotspotParams::full_scale();
  count("hotspot_flows", s.hotspot.num_flows);
  count("hotspot_entities", s.hotspot.num_entities);
  count("hotspot_elements", s.hotspot.num_elements);
  real("hotspot_mean_bw", s.hotspot.mean_bw);
  count("focus_app", s.focus_app);
  real("epsilon", s.solver.epsilon);
  real("mu", s.solver.mu);
  real("t0", s.solver.t0);
  real("inner_tol", s.solver.inner_tol);
  count("max_inner_iters", s.solver.max_inner_iters);
  count("max_outer_iters", s.solver.max_outer_iters);
  real("interior_shift", s.solver.interior_shift);
  real("per_bs_fraction", s.reservation.per_bs_fraction);
  real("net_min_fraction", s.reservation.net_min_fraction);
  real("net_max_fraction", s.reservation.net_max_fraction);
  real("log_floor", s.log_floor);
  count("jobs", s.jobs);
  if (const json* v = get("timing")) s.timing = v->get<bool>();
  if (const json* v = get("trace")) cfg.trace = v->get<bool>();
  s.solver.record_trace = cfg.trace;
  if (const json* v = get("out")) cfg.out_dir = v->get<std::string>();
  if (const json* v = get("instance")) cfg.instance_path = v->get<std::string>();

  const std::string loads_text =
      get("loads") ? get("loads")->get<std::string>()
                   : (cfg.experiment == ExperimentChoice::hotspot ? "1..15"
                                                                  : "1..10");
  cfg.loads = parse_loads(loads_text);
  s.loads = cfg.loads;

  const std::string util =
      get("utility") ? get("utility")->get<std::string>() : "both";
  if (util == "both") {
    cfg.utility_kinds = {UtilityKind::linear, UtilityKind::logarithmic};
  } else {
    try {
      cfg.utility_kinds = {parse_utility_kind(util)};
    } catch (const Error&) {
      throw ConfigError("config key 'utility': expected linear, log or both");
    }
  }
  s.utility_kinds = cfg.utility_kinds;

  try {
    p.validate();
    s.validate();
    s.reservation.validate(p.num_entities);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  // The echo carries every resolved value, so it alone reproduces the run.
  json echo = flat;
  echo["seed"] = cfg.seed;
  echo["experiment"] = exp;
  echo["loads"] = loads_text;
  echo["utility"] = util;
  echo["out"] = cfg.out_dir;
  echo["trace"] = cfg.trace;
  echo["timing"] = s.timing;
  echo["jobs"] = s.jobs;
  echo["desk_scale"] = desk;
  echo["num_elements"] = p.num_elements;
  echo["num_entities"] = p.num_entities;
  echo["num_apps"] = p.num_apps;
  echo["num_flows"] = p.num_flows;
  echo["qoe_min"] = p.qoe_min;
  echo["qoe_max"] = p.qoe_max;
  echo["channel_min"] = p.channel_min;
  echo["channel_max"] = p.channel_max;
  echo["capacity_min"] = p.capacity_min;
  echo["capacity_max"] = p.capacity_max;
  echo["bw_min"] = p.bw_min;
  echo["bw_max"] = p.bw_max;
  echo["num_focus_apps"] = p.num_focus_apps;
  echo["focus_min_share"] = p.focus_min_share;
  echo["focus_max_share"] = p.focus_max_share;
  echo["other_min_share"] = p.other_min_share;
  echo["other_max_share"] = p.other_max_share;
  echo["focus_app"] = s.focus_app;
  echo["hotspot_flows"] = s.hotspot.num_flows;
  echo["hotspot_entities"] = s.hotspot.num_entities;
  echo["hotspot_elements"] = s.hotspot.num_elements;
  echo["hotspot_mean_bw"] = s.hotspot.mean_bw;
  echo["epsilon"] = s.solver.epsilon;
  echo["mu"] = s.solver.mu;
  echo["t0"] = s.solver.t0;
  echo["inner_tol"] = s.solver.inner_tol;
  echo["max_inner_iters"] = s.solver.max_inner_iters;
  echo["max_outer_iters"] = s.solver.max_outer_iters;
  echo["interior_shift"] = s.solver.interior_shift;
  echo["per_bs_fraction"] = s.reservation.per_bs_fraction;
  echo["net_min_fraction"] = s.reservation.net_min_fraction;
  echo["net_max_fraction"] = s.reservation.net_max_fraction;
  echo["log_floor"] = s.log_floor;
  cfg.echo = std::move(echo);
  return cfg;
}

}  // namespace soaran::cli
