#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "report_io.hpp"
#include "run_config.hpp"
#include "soaran/experiment.hpp"
#include "soaran/scenario.hpp"
#include "soaran/solver.hpp"

namespace {

using namespace soaran;
using namespace soaran::cli;

int run_single_solve(const RunConfig& cfg, const std::string& out) {
  const ProblemInstance inst =
      cfg.instance_path ? load_instance(*cfg.instance_path) : trivial_instance();
  SolverConfig sc = cfg.spec.solver;
  sc.record_trace = cfg.trace;
  const SolveResult r = solve(inst, sc);
  const FeasibilityReport feas = check_feasible(inst, r.allocation, 1e-9);

  CellResult row;
  row.scheme = Scheme::soaran;
  row.utility_kind = inst.utility_kind();
  row.ok = true;
  row.total_utility = r.objective;
  for (std::size_t i = 0; i < inst.num_elements(); ++i) {
    row.app_m_resource += r.allocation(i, 0);
  }
  row.app_m_fraction = row.app_m_resource / inst.aggregate_capacity();
  row.outer_iters = r.outer_iters;
  row.trace = r.trace;
  write_file(out + "/results.csv", results_csv({row}));
  if (cfg.trace) write_file(out + "/trace.jsonl", trace_jsonl({row}));

  json alloc = json::array();
  for (std::size_t i = 0; i < inst.num_elements(); ++i) {
    json line = json::array();
    for (std::size_t k = 0; k < inst.num_apps(); ++k) {
      line.push_back(json9(r.allocation(i, k)));
    }
    alloc.push_back(std::move(line));
  }
  json summary{{"experiment", "single-solve"},
               {"config", cfg.echo},
               {"objective", json9(r.objective)},
               {"gap_bound", json9(r.gap_bound)},
               {"t_final", json9(r.t_final)},
               {"outer_iters", r.outer_iters},
               {"inner_iters_total", r.inner_iters_total},
               {"inner_stalls", r.inner_stalls},
               {"converged", r.converged},
               {"feasible", feas.feasible},
               {"max_violation", json9(feas.worst())},
               {"allocation", std::move(alloc)}};
  write_file(out + "/summary.json", summary.dump(2) + '\n');
  std::printf("objective %s  gap_bound %s  outer_iters %zu  %s\n",
              fmt9(r.objective).c_str(), fmt9(r.gap_bound).c_str(),
              r.outer_iters, r.converged ? "converged" : "NOT converged");
  if (!r.converged || !feas.feasible) {
    std::fprintf(stderr, "soaran: solver did not reach the target\n");
    return 3;
  }
  return 0;
}

int run_experiment_cmd(const RunConfig& cfg, const std::string& out) {
  const Scenario base = experiment_scenario(cfg.scenario, cfg.spec, cfg.seed);
  const ExperimentReport rep = run_experiment(base, cfg.spec);
  write_file(out + "/results.csv", results_csv(rep.rows));
  if (cfg.trace) write_file(out + "/trace.jsonl", trace_jsonl(rep.rows));

  json failures = json::array();
  std::size_t unconverged = 0;
  double worst_violation = 0.0;
  for (const CellResult& r : rep.rows) {
    if (r.ok) worst_violation = std::max(worst_violation, r.max_violation);
    if (!r.ok) {
      failures.push_back({{"scheme", std::string(to_string(r.scheme))},
                          {"load", json9(r.load)},
                          {"utility_kind", std::string(to_string(r.utility_kind))},
                          {"error", r.error}});
    }
    unconverged += r.ok && !r.converged;
  }
  json summary{{"experiment", std::string(to_string(cfg.experiment))},
               {"config", cfg.echo},
               {"seed", cfg.seed},
               {"hotspot_seed", rep.hotspot_seed},
               {"aggregate_capacity", json9(rep.aggregate_capacity)},
               {"flows_total", base.flows.size()},
               {"rows", rep.rows.size()},
               {"unconverged_solves", unconverged},
               {"max_violation", json9(worst_violation)},
               {"failures", std::move(failures)}};
  write_file(out + "/summary.json", summary.dump(2) + '\n');
  std::printf("%zu rows written to %s/results.csv\n", rep.rows.size(),
              out.c_str());
  if (rep.failures() > 0) {
    std::fprintf(stderr, "soaran: %zu cells failed (marked ERROR)\n",
                 rep.failures());
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SOARAN RAN-sharing allocator: experiments and single solves"};
  std::optional<std::string> config_path;
  std::vector<std::pair<std::string, std::optional<std::string>>> flags{
      {"experiment", {}}, {"loads", {}},   {"utility", {}}, {"seed", {}},
      {"out", {}},        {"epsilon", {}}, {"mu", {}},      {"jobs", {}},
      {"instance", {}}};
  bool trace = false, desk = false, timing = false;

  app.add_option("--config", config_path, "flat JSON config file");
  app.add_option("--experiment", flags[0].second, "utility | hotspot | single-solve");
  app.add_option("--loads", flags[1].second, "load multipliers, A..B");
  app.add_option("--utility", flags[2].second, "linear | log | both");
  app.add_option("--seed", flags[3].second, "scenario seed (required)");
  app.add_option("--out", flags[4].second, "output directory");
  app.add_option("--epsilon", flags[5].second, "solver suboptimality target");
  app.add_option("--mu", flags[6].second, "barrier multiplier growth");
  app.add_option("--jobs", flags[7].second, "parallel experiment cells");
  app.add_option("--instance", flags[8].second,
                 "JSON problem instance for single-solve");
  app.add_flag("--trace", trace, "write trace.jsonl");
  app.add_flag("--desk-scale", desk, "100 elements, 10 entities, 20 apps, 500 flows");
  app.add_flag("--timing", timing, "record wall-clock solve_ms");
  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  try {
    ConfigLayers layers;
    if (config_path) layers.merge_file(*config_path);
    layers.merge_env();
    for (const auto& [key, value] : flags) {
      if (value) layers.set(key, *value);
    }
    if (trace) layers.set("trace", true);
    if (desk) layers.set("desk_scale", true);
    if (timing) layers.set("timing", true);
    cfg = resolve(layers.flat());
  } catch (const soaran::Error& e) {
    std::fprintf(stderr, "soaran: %s\n", e.what());
    return 2;
  }

  try {
    std::filesystem::create_directories(cfg.out_dir);
    return cfg.experiment == ExperimentChoice::single_solve
               ? run_single_solve(cfg, cfg.out_dir)
               : run_experiment_cmd(cfg, cfg.out_dir);
  } catch (const soaran::ConfigError& e) {
    std::fprintf(stderr, "soaran: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "soaran: %s\n", e.what());
    return 3;
  }
}
