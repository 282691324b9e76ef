#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "soaran/error.hpp"
#include "soaran/flow_alloc.hpp"
#include "soaran/matrix.hpp"
#include "soaran/scenario.hpp"

// Entity-oriented reservation schemes used as comparison points. Inside an
// entity's budget at an element, flows are served by the same max-min
// water-filling as the second phase, so only the reservation policy differs.

namespace soaran {

struct ReservationConfig {
  double per_bs_fraction = 0.05;   // of B_i, per entity, at every element
  double net_min_fraction = 0.02;  // of B, per entity
  double net_max_fraction = 0.10;  // of B, per entity

  void validate(std::size_t num_entities) const {
    auto frac = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!frac(per_bs_fraction) || !frac(net_min_fraction) ||
        !frac(net_max_fraction) || net_min_fraction > net_max_fraction) {
      throw InvalidParams("reservation: fractions must lie in [0,1] with "
                          "min <= max");
    }
    if (static_cast<double>(num_entities) * per_bs_fraction > 1.0 + 1e-12) {
      throw InvalidParams("reservation: per-element reservations exceed the "
                          "element capacity");
    }
  }
};

struct EntityAllocation {
  std::vector<Matrix> per_entity;  // resource used by each entity's flows
  FlowAllocation flows;

  Matrix total() const {
    Matrix sum(per_entity.empty() ? 0 : per_entity.front().rows(),
               per_entity.empty() ? 0 : per_entity.front().cols());
    for (const Matrix& m : per_entity) {
      for (std::size_t j = 0; j < m.size(); ++j) sum.flat()[j] += m.flat()[j];
    }
    return sum;
  }
};

namespace detail {

// Flow positions grouped by (entity, element).
class EntityElementIndex {
 public:
  explicit EntityElementIndex(const Scenario& sc)
      : elems_(sc.elements.size()),
        groups_(sc.entities.size() * sc.elements.size()) {
    for (std::size_t pos = 0; pos < sc.flows.size(); ++pos) {
      const Flow& f = sc.flows[pos];
      groups_[f.entity_id * elems_ + f.element_id].push_back(pos);
    }
  }
  const std::vector<std::size_t>& at(std::size_t e, std::size_t i) const {
    return groups_[e * elems_ + i];
  }

 private:
  std::size_t elems_;
  std::vector<std::vector<std::size_t>> groups_;
};

// Water-fills one (entity, element) budget over the group's resource demands.
inline void serve_group(const Scenario& sc, const std::vector<std::size_t>& group,
                        double budget, std::size_t entity,
                        EntityAllocation& out) {
  if (group.empty()) return;
  std::vector<double> demand(group.size());
  for (std::size_t j = 0; j < group.size(); ++j) {
    const Flow& f = sc.flows[group[j]];
    demand[j] = f.demand_bw * sc.ratios(f.element_id, f.app_id);
  }
  const auto served = water_fill(demand, budget);
  for (std::size_t j = 0; j < group.size(); ++j) {
    const Flow& f = sc.flows[group[j]];
    const double p = sc.ratios(f.element_id, f.app_id);
    // Fully served flows get their exact demand back.
    const double bw = served[j] >= demand[j] ? f.demand_bw : served[j] / p;
    out.flows.bandwidth[group[j]] = bw;
    out.flows.resource[group[j]] = served[j];
    out.per_entity[entity](f.element_id, f.app_id) += served[j];
  }
}

inline EntityAllocation empty_allocation(const Scenario& sc) {
  EntityAllocation out;
  out.per_entity.assign(sc.entities.size(),
                        Matrix(sc.elements.size(), sc.apps.size()));
  out.flows.bandwidth.assign(sc.flows.size(), 0.0);
  out.flows.resource.assign(sc.flows.size(), 0.0);
  return out;
}

}  // namespace detail

// Every entity owns a hard slice per_bs_fraction * B_i at every element; an
// idle slice is never lent to other entities.
inline EntityAllocation per_bs_rsv_allocate(const Scenario& sc,
                                            const ReservationConfig& cfg) {
  sc.validate();
  cfg.validate(sc.entities.size());
  const detail::EntityElementIndex index(sc);
  EntityAllocation out = detail::empty_allocation(sc);
  for (std::size_t e = 0; e < sc.entities.size(); ++e) {
    for (std::size_t i = 0; i < sc.elements.size(); ++i) {
      detail::serve_group(sc, index.at(e, i),
                          cfg.per_bs_fraction * sc.elements[i].capacity, e,
                          out);
    }
  }
  return out;
}

// Entity budgets over the whole RAN: demand clamped to [min, max] * B and
// rescaled if they oversubscribe B. Each budget is spread over elements in
// proportion to the entity's demand there.
inline EntityAllocation net_rsv_allocate(const Scenario& sc,
                                         const ReservationConfig& cfg) {
  sc.validate();
  cfg.validate(sc.entities.size());
  const std::size_t E = sc.entities.size(), I = sc.elements.size();
  const double B = sc.aggregate_capacity();

  Matrix demand(E, I);  // resource demand of entity e at element i
  for (const Flow& f : sc.flows) {
    demand(f.entity_id, f.element_id) +=
        f.demand_bw * sc.ratios(f.element_id, f.app_id);
  }

  std::vector<double> budget(E);
  double committed = 0.0;
  for (std::size_t e = 0; e < E; ++e) {
    budget[e] = std::clamp(demand.row_sum(e), cfg.net_min_fraction * B,
                           cfg.net_max_fraction * B);
    committed += budget[e];
  }
  if (committed > B) {
    for (double& b : budget) b *= B / committed;
  }

  // grant(e, i): the part of entity e's budget placed at element i.
  Matrix grant(E, I);
  for (std::size_t e = 0; e < E; ++e) {
    std::vector<char> open(I, 0);
    for (std::size_t i = 0; i < I; ++i) open[i] = demand(e, i) > 0.0;
    double left = budget[e];
    // Proportional placement; a share above B_i is truncated and the excess
    // goes back to the entity's other open elements.
    while (left > 0.0) {
      double weight = 0.0;
      for (std::size_t i = 0; i < I; ++i) {
        if (open[i]) weight += demand(e, i);
      }
      if (weight <= 0.0) break;
      double excess = 0.0;
      bool truncated = false;
      for (std::size_t i = 0; i < I; ++i) {
        if (!open[i]) continue;
        const double want = grant(e, i) + left * demand(e, i) / weight;
        const double cap = sc.elements[i].capacity;
        if (want > cap) {
          excess += want - cap;
          grant(e, i) = cap;
          open[i] = 0;
          truncated = true;
        } else {
          grant(e, i) = want;
        }
      }
      if (!truncated) break;
      left = excess;
    }
  }

  // Element arbitration: the usable part of the grants (never above demand)
  // is scaled down where entities together would exceed B_i.
  for (std::size_t i = 0; i < I; ++i) {
    double usable = 0.0;
    for (std::size_t e = 0; e < E; ++e) {
      grant(e, i) = std::min(grant(e, i), demand(e, i));
      usable += grant(e, i);
    }
    const double cap = sc.elements[i].capacity;
    if (usable > cap) {
      for (std::size_t e = 0; e < E; ++e) grant(e, i) *= cap / usable;
    }
  }

  const detail::EntityElementIndex index(sc);
  EntityAllocation out = detail::empty_allocation(sc);
  for (std::size_t e = 0; e < E; ++e) {
    for (std::size_t i = 0; i < I; ++i) {
      detail::serve_group(sc, index.at(e, i), grant(e, i), e, out);
    }
  }
  return out;
}

}  // namespace soaran
