#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "soaran/baselines.hpp"
#include "soaran/error.hpp"
#include "soaran/flow_alloc.hpp"
#include "soaran/model.hpp"
#include "soaran/scenario.hpp"
#include "soaran/solver.hpp"
#include "soaran/utility.hpp"

namespace soaran {

enum class Scheme { soaran, net_rsv, per_bs_rsv };

inline std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::soaran: return "SOARAN";
    case Scheme::net_rsv: return "Net-Rsv";
    case Scheme::per_bs_rsv: return "Per-Bs-Rsv";
  }
  return "unknown";
}

inline Scheme parse_scheme(std::string_view text) {
  if (text == "SOARAN" || text == "soaran") return Scheme::soaran;
  if (text == "Net-Rsv" || text == "net-rsv") return Scheme::net_rsv;
  if (text == "Per-Bs-Rsv" || text == "per-bs-rsv") return Scheme::per_bs_rsv;
  throw InvalidParams("unknown scheme '" + std::string(text) + "'");
}

enum class ExperimentKind { utility, hotspot };

inline std::string_view to_string(ExperimentKind k) noexcept {
  return k == ExperimentKind::utility ? "utility" : "hotspot";
}

struct HotspotParams {
  std::size_t num_flows = 2000;
  std::size_t num_entities = 5;
  std::size_t num_elements = 200;
  double mean_bw = 1.0;

  static HotspotParams full_scale() { return {}; }
  static HotspotParams desk_scale() { return {200, 3, 20, 1.0}; }
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::utility;
  std::vector<Scheme> schemes{Scheme::soaran, Scheme::net_rsv,
                              Scheme::per_bs_rsv};
  std::vector<double> loads{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<UtilityKind> utility_kinds{UtilityKind::linear,
                                         UtilityKind::logarithmic};
  std::size_t focus_app = 0;  // "app m"
  HotspotParams hotspot;
  SolverConfig solver;
  ReservationConfig reservation;
  double log_floor = kDefaultLogFloor;
  std::size_t jobs = 1;
  bool timing = false;  // wall-clock solve times make tables irreproducible

  void validate() const {
    if (schemes.empty() || loads.empty() || utility_kinds.empty()) {
      throw InvalidParams("experiment: schemes, loads and utility kinds must "
                          "be non-empty");
    }
    for (double l : loads) {
      if (!(l >= 1.0) || !std::isfinite(l)) {
        throw InvalidParams("experiment: load multipliers must be >= 1");
      }
    }
    if (!(log_floor > 0.0)) throw InvalidParams("experiment: log_floor <= 0");
    solver.validate();
  }
};

struct CellResult {
  Scheme scheme = Scheme::soaran;
  double load = 1.0;
  UtilityKind utility_kind = UtilityKind::linear;
  bool ok = false;
  std::string error;
  double total_utility = 0.0;
  double app_m_resource = 0.0;  // resource served to focus-app flows
  double app_m_fraction = 0.0;  // of aggregate capacity B
  std::size_t qoe_satisfied = 0;
  std::size_t flows_total = 0;
  std::optional<double> solve_ms;
  std::optional<std::size_t> outer_iters;  // SOARAN only
  bool converged = true;
  double max_violation = 0.0;  // worst constraint violation of the allocation
  std::vector<TraceRecord> trace;
};

struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::utility;
  std::uint64_t seed = 0;
  std::uint64_t hotspot_seed = 0;
  double aggregate_capacity = 0.0;
  // Ordered by utility kind, then scheme, then load.
  std::vector<CellResult> rows;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += !r.ok;
    return n;
  }
};

inline ProblemInstance build_instance(const Scenario& sc, UtilityKind kind) {
  const DemandMatrix d = estimate_demand(sc.flows, sc.ratios);
  Bounds b = expand_bounds(sc.apps, sc.elements);
  std::vector<double> caps(sc.elements.size());
  for (std::size_t i = 0; i < caps.size(); ++i) {
    caps[i] = sc.elements[i].capacity;
  }
  // Unit weights: c = d.
  return ProblemInstance(std::move(caps), std::move(b.lower),
                         std::move(b.upper), d.values, kind);
}

// Only the element capacities: the constraint set the baselines live under.
inline ProblemInstance capacity_instance(const Scenario& sc) {
  const std::size_t I = sc.elements.size(), K = sc.apps.size();
  std::vector<double> caps(I);
  Matrix upper(I, K);
  for (std::size_t i = 0; i < I; ++i) {
    caps[i] = sc.elements[i].capacity;
    for (std::size_t k = 0; k < K; ++k) upper(i, k) = caps[i];
  }
  return ProblemInstance(std::move(caps), Matrix(I, K), std::move(upper),
                         Matrix(I, K), UtilityKind::linear);
}

// Per-scheme allocation of one scenario; usage is the per-cell resource.
struct SchemeOutcome {
  FlowAllocation flows;
  Matrix usage;
  std::optional<SolveResult> solve;
  double solve_ms = 0.0;
  double max_violation = 0.0;  // check_feasible(...).worst()
};

inline SchemeOutcome run_scheme(const Scenario& sc, Scheme scheme,
                                UtilityKind kind, const SolverConfig& solver,
                                const ReservationConfig& rsv) {
  SchemeOutcome out;
  switch (scheme) {
    case Scheme::soaran: {
      const ProblemInstance inst = build_instance(sc, kind);
      const auto start = std::chrono::steady_clock::now();
      SolveResult r = solve(inst, solver);
      out.solve_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      out.max_violation = check_feasible(inst, r.allocation, 0.0).worst();
      out.flows = allocate_flows(sc, r.allocation);
      out.usage = r.allocation;
      out.solve = std::move(r);
      break;
    }
    case Scheme::net_rsv: {
      EntityAllocation a = net_rsv_allocate(sc, rsv);
      out.usage = a.total();
      out.max_violation =
          check_feasible(capacity_instance(sc), out.usage, 0.0).worst();
      out.flows = std::move(a.flows);
      break;
    }
    case Scheme::per_bs_rsv: {
      EntityAllocation a = per_bs_rsv_allocate(sc, rsv);
      out.usage = a.total();
      out.max_violation =
          check_feasible(capacity_instance(sc), out.usage, 0.0).worst();
      out.flows = std::move(a.flows);
      break;
    }
  }
  return out;
}

// The scenario a cell runs on: utility experiments scale every flow, hotspot
// experiments only the appended hotspot flows.
inline Scenario loaded_scenario(const Scenario& base, ExperimentKind kind,
                                double load) {
  return kind == ExperimentKind::utility ? scale_load(base, load)
                                         : scale_hotspot(base, load);
}

inline CellResult evaluate_cell(const Scenario& base, const ExperimentSpec& spec,
                                Scheme scheme, double load, UtilityKind kind) {
  CellResult cell;
  cell.scheme = scheme;
  cell.load = load;
  cell.utility_kind = kind;
  cell.flows_total = base.flows.size();
  try {
    const Scenario sc = loaded_scenario(base, spec.kind, load);
    SchemeOutcome o =
        run_scheme(sc, scheme, kind, spec.solver, spec.reservation);
    cell.total_utility = flow_utility(o.flows, sc, kind, spec.log_floor);
    for (std::size_t f = 0; f < sc.flows.size(); ++f) {
      if (sc.flows[f].app_id == spec.focus_app) {
        cell.app_m_resource += o.flows.resource[f];
      }
    }
    cell.app_m_fraction = cell.app_m_resource / sc.aggregate_capacity();
    cell.qoe_satisfied = qoe_satisfied_count(o.flows, sc.flows);
    cell.max_violation = o.max_violation;
    if (o.solve) {
      cell.outer_iters = o.solve->outer_iters;
      cell.converged = o.solve->converged;
      if (spec.timing) cell.solve_ms = o.solve_ms;
      cell.trace = std::move(o.solve->trace);
    }
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  return cell;
}

// Builds the base scenario for an experiment: hotspot flows are drawn from a
// stream derived from the seed so the base flows match the utility run.
inline Scenario experiment_scenario(const ScenarioParams& params,
                                    const ExperimentSpec& spec,
                                    std::uint64_t seed) {
  Scenario sc = generate_scenario(params, seed);
  if (spec.kind == ExperimentKind::hotspot) {
    const HotspotParams& h = spec.hotspot;
    sc = add_hotspot(std::move(sc), spec.focus_app, h.num_flows,
                     h.num_entities, h.num_elements, h.mean_bw,
                     derive_seed(seed, 1));
  }
  return sc;
}

inline ExperimentReport run_experiment(const Scenario& base,
                                       const ExperimentSpec& spec) {
  spec.validate();
  base.validate();
  if (spec.focus_app >= base.apps.size()) {
    throw InvalidParams("experiment: focus app out of range");
  }

  ExperimentReport report;
  report.kind = spec.kind;
  report.seed = base.seed;
  report.hotspot_seed =
      spec.kind == ExperimentKind::hotspot ? derive_seed(base.seed, 1) : 0;
  report.aggregate_capacity = base.aggregate_capacity();

  struct Key {
    UtilityKind kind;
    Scheme scheme;
    double load;
  };
  std::vector<Key> keys;
  for (UtilityKind k : spec.utility_kinds) {
    for (Scheme s : spec.schemes) {
      for (double l : spec.loads) keys.push_back({k, s, l});
    }
  }
  report.rows.resize(keys.size());

  // Results land at their key's index, so the schedule cannot change them.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < keys.size(); j = next++) {
      report.rows[j] = evaluate_cell(base, spec, keys[j].scheme, keys[j].load,
                                     keys[j].kind);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, spec.jobs);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(jobs, keys.size()); ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) th.join();
  return report;
}

}  // namespace soaran
