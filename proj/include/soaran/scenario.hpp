#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "soaran/error.hpp"
#include "soaran/model.hpp"
#include "soaran/rng.hpp"
#include "soaran/utility.hpp"

namespace soaran {

struct ScenarioParams {
  std::size_t num_elements = 1000;
  std::size_t num_entities = 20;
  std::size_t num_apps = 100;
  std::size_t num_flows = 5000;

  double qoe_min = 0.1;  // resource units per Mbps
  double qoe_max = 2.0;
  double channel_min = 1.0;
  double channel_max = 2.0;
  double capacity_min = 100.0;
  double capacity_max = 300.0;
  double bw_min = 0.1;  // Mbps
  double bw_max = 1.0;

  // The first num_focus_apps applications (m, n, ...) get the focus shares;
  // the rest split what the focus minima leave over.
  std::size_t num_focus_apps = 2;
  double focus_min_share = 0.05;
  double focus_max_share = 0.40;
  double other_min_share = 0.0001;
  double other_max_share = 0.0;  // <= 0: (1 - focus minima) / #others

  static ScenarioParams full_scale() { return {}; }

  static ScenarioParams desk_scale() {
    ScenarioParams p;
    p.num_elements = 100;
    p.num_entities = 10;
    p.num_apps = 20;
    p.num_flows = 500;
    return p;
  }

  double resolved_other_max_share() const {
    if (other_max_share > 0.0) return other_max_share;
    const std::size_t others = num_apps - std::min(num_apps, num_focus_apps);
    if (others == 0) return 0.0;
    return (1.0 - focus_min_share * static_cast<double>(num_focus_apps)) /
           static_cast<double>(others);
  }

  void validate() const {
    auto range = [](double lo, double hi, const char* name, bool positive) {
      if (!(lo <= hi) || (positive && !(lo > 0.0)) || !(lo >= 0.0)) {
        throw InvalidParams(std::string("scenario: invalid range for ") +
                            name);
      }
    };
    if (num_elements == 0 || num_entities == 0 || num_apps == 0) {
      throw InvalidParams("scenario: element, entity and app counts must be "
                          "positive");
    }
    if (num_focus_apps > num_apps) {
      throw InvalidParams("scenario: more focus apps than apps");
    }
    range(qoe_min, qoe_max, "qoe factor", true);
    range(channel_min, channel_max, "channel multiplier", true);
    range(capacity_min, capacity_max, "capacity", true);
    range(bw_min, bw_max, "bandwidth", true);
  }
};

struct Scenario {
  std::vector<RadioElement> elements;
  std::vector<Entity> entities;
  std::vector<Application> apps;
  std::vector<Flow> flows;
  TranslatingRatios ratios;
  std::uint64_t seed = 0;
  double load_multiplier = 1.0;
  // Flows at positions >= hotspot_begin were added by add_hotspot.
  std::optional<std::size_t> hotspot_begin;

  double aggregate_capacity() const {
    double acc = 0.0;
    for (const auto& e : elements) acc += e.capacity;
    return acc;
  }

  void validate() const {
    const std::size_t I = elements.size(), K = apps.size();
    if (ratios.values.rows() != I || ratios.values.cols() != K) {
      throw DimensionMismatch("scenario: ratio matrix must be |I| x |K|");
    }
    ratios.validate();
    for (std::size_t i = 0; i < I; ++i) {
      if (elements[i].id != i) throw InvalidParams("scenario: element ids");
      elements[i].validate();
    }
    for (std::size_t k = 0; k < K; ++k) {
      if (apps[k].id != k) throw InvalidParams("scenario: app ids");
      apps[k].validate();
    }
    for (std::size_t e = 0; e < entities.size(); ++e) {
      if (entities[e].id != e) throw InvalidParams("scenario: entity ids");
    }
    for (const Flow& f : flows) {
      if (f.element_id >= I || f.app_id >= K ||
          f.entity_id >= entities.size()) {
        throw UnknownReference("scenario: flow " + std::to_string(f.id) +
                               " references a missing object");
      }
      if (!(f.demand_bw > 0.0)) {
        throw InvalidParams("scenario: flow demand must be positive");
      }
    }
    if (hotspot_begin && *hotspot_begin > flows.size()) {
      throw InvalidParams("scenario: hotspot marker past the flow list");
    }
  }
};

inline Scenario generate_scenario(const ScenarioParams& params,
                                  std::uint64_t seed) {
  params.validate();
  Rng rng(seed);
  const std::size_t I = params.num_elements, K = params.num_apps;

  Scenario sc;
  sc.seed = seed;
  const double other_max = params.resolved_other_max_share();
  sc.apps.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    Application& a = sc.apps[k];
    a.id = k;
    const bool focus = k < params.num_focus_apps;
    a.priority = focus ? 1 : 0;
    a.qoe_factor = rng.uniform(params.qoe_min, params.qoe_max);
    a.min_share = focus ? params.focus_min_share : params.other_min_share;
    a.max_share = focus ? params.focus_max_share : other_max;
  }

  sc.elements.resize(I);
  for (std::size_t i = 0; i < I; ++i) {
    sc.elements[i].id = i;
    sc.elements[i].capacity =
        rng.uniform(params.capacity_min, params.capacity_max);
  }

  sc.ratios.values = Matrix(I, K);
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t k = 0; k < K; ++k) {
      sc.ratios.values(i, k) =
          sc.apps[k].qoe_factor *
          rng.uniform(params.channel_min, params.channel_max);
    }
  }

  sc.entities.resize(params.num_entities);
  for (std::size_t e = 0; e < params.num_entities; ++e) {
    sc.entities[e] = {e, "entity-" + std::to_string(e)};
  }

  sc.flows.resize(params.num_flows);
  for (std::size_t f = 0; f < params.num_flows; ++f) {
    Flow& fl = sc.flows[f];
    fl.id = f;
    fl.app_id = rng.index(K);
    fl.element_id = rng.index(I);
    fl.entity_id = rng.index(params.num_entities);
    fl.demand_bw = rng.uniform(params.bw_min, params.bw_max);
  }

  double min_total = 0.0;
  for (const auto& a : sc.apps) min_total += a.min_share;
  if (min_total > 1.0 + 1e-12) {
    throw InvalidParams("scenario: application minimum shares exceed 1");
  }
  sc.validate();
  return sc;
}

// Multiplies the demand of flows [first, end) by multiplier.
inline Scenario scale_flows(Scenario sc, double multiplier, std::size_t first) {
  if (!(multiplier >= 1.0) || !std::isfinite(multiplier)) {
    throw InvalidParams("load multiplier must be >= 1");
  }
  for (std::size_t f = first; f < sc.flows.size(); ++f) {
    sc.flows[f].demand_bw *= multiplier;
  }
  sc.load_multiplier *= multiplier;
  return sc;
}

inline Scenario scale_load(const Scenario& sc, double multiplier) {
  return scale_flows(sc, multiplier, 0);
}

// Scales only the hotspot flows; base flows keep their demand.
inline Scenario scale_hotspot(const Scenario& sc, double multiplier) {
  return scale_flows(sc, multiplier, sc.hotspot_begin.value_or(sc.flows.size()));
}

namespace detail {

inline std::vector<std::size_t> pick_distinct(Rng& rng, std::size_t n,
                                              std::size_t count) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t j = 0; j < count; ++j) {
    std::swap(pool[j], pool[j + rng.index(n - j)]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace detail

// Appends n_flows flows of app_id from n_entities random entities across
// n_elements random elements, demand uniform on [0.5, 1.5] * mean_bw.
inline Scenario add_hotspot(Scenario sc, std::size_t app_id,
                            std::size_t n_flows, std::size_t n_entities,
                            std::size_t n_elements, double mean_bw,
                            std::uint64_t seed) {
  if (n_flows == 0) return sc;
  if (app_id >= sc.apps.size()) throw InvalidParams("hotspot: unknown app");
  if (n_entities == 0 || n_entities > sc.entities.size()) {
    throw InvalidParams("hotspot: entity count out of range");
  }
  if (n_elements == 0 || n_elements > sc.elements.size()) {
    throw InvalidParams("hotspot: element count out of range");
  }
  if (!(mean_bw > 0.0)) throw InvalidParams("hotspot: mean_bw must be > 0");

  Rng rng(seed);
  const auto ents = detail::pick_distinct(rng, sc.entities.size(), n_entities);
  const auto elems = detail::pick_distinct(rng, sc.elements.size(), n_elements);
  const std::size_t begin = sc.flows.size();
  for (std::size_t f = 0; f < n_flows; ++f) {
    Flow fl;
    fl.id = begin + f;
    fl.app_id = app_id;
    fl.entity_id = ents[rng.index(n_entities)];
    fl.element_id = elems[rng.index(n_elements)];
    fl.demand_bw = rng.uniform(0.5 * mean_bw, 1.5 * mean_bw);
    sc.flows.push_back(fl);
  }
  if (!sc.hotspot_begin) sc.hotspot_begin = begin;
  return sc;
}

}  // namespace soaran
