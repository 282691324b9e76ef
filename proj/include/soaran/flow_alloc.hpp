#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "soaran/matrix.hpp"
#include "soaran/model.hpp"
#include "soaran/scenario.hpp"

namespace soaran {

// Max-min fair water level for splitting budget over demands with each share
// capped at its demand. Returns +inf when the budget covers every demand.
inline double water_level(std::span<const double> demands, double budget) {
  if (demands.empty()) return 0.0;
  // Sums run over the sorted copy so rounding is independent of input order.
  std::vector<double> sorted(demands.begin(), demands.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (double d : sorted) total += d;
  if (budget >= total) return std::numeric_limits<double>::infinity();
  if (!(budget > 0.0)) return 0.0;
  double remaining = budget;
  const std::size_t n = sorted.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double unsatisfied = static_cast<double>(n - j);
    if (sorted[j] * unsatisfied > remaining) return remaining / unsatisfied;
    remaining -= sorted[j];
  }
  return sorted.back();
}

// Shares are min(demand, level). The result depends only on the multiset of
// demands, never on their order.
inline std::vector<double> water_fill(std::span<const double> demands,
                                      double budget) {
  const double level = water_level(demands, budget);
  std::vector<double> out(demands.size());
  for (std::size_t j = 0; j < demands.size(); ++j) {
    out[j] = std::min(demands[j], level);
  }
  return out;
}

// Per-flow outcome, indexed like Scenario::flows.
struct FlowAllocation {
  std::vector<double> bandwidth;  // Mbps
  std::vector<double> resource;   // bandwidth * p_i^k
};

// Element-local distribution of one cell's grant: bandwidth budget
// budget / ratio, water-filled over the flows' bandwidth demands.
inline std::vector<double> second_phase_allocate(
    std::span<const double> demand_bw, double budget, double ratio) {
  return water_fill(demand_bw, std::max(budget, 0.0) / ratio);
}

// Flow positions grouped by (element, app) cell, row-major.
class CellIndex {
 public:
  explicit CellIndex(const Scenario& sc)
      : cols_(sc.apps.size()), start_(sc.elements.size() * cols_ + 1, 0) {
    for (const Flow& f : sc.flows) ++start_[cell(f) + 1];
    std::partial_sum(start_.begin(), start_.end(), start_.begin());
    order_.resize(sc.flows.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t pos = 0; pos < sc.flows.size(); ++pos) {
      order_[fill[cell(sc.flows[pos])]++] = pos;
    }
  }

  std::span<const std::size_t> flows_at(std::size_t i, std::size_t k) const {
    const std::size_t c = i * cols_ + k;
    return {order_.data() + start_[c], start_[c + 1] - start_[c]};
  }

 private:
  std::size_t cell(const Flow& f) const {
    return f.element_id * cols_ + f.app_id;
  }

  std::size_t cols_;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> order_;
};

// Runs the second phase at every cell of an application-level allocation.
inline FlowAllocation allocate_flows(const Scenario& sc,
                                     const AllocationMatrix& grant) {
  const std::size_t I = sc.elements.size(), K = sc.apps.size();
  if (grant.rows() != I || grant.cols() != K) {
    throw DimensionMismatch("allocate_flows: grant must be |I| x |K|");
  }
  FlowAllocation out{std::vector<double>(sc.flows.size(), 0.0),
                     std::vector<double>(sc.flows.size(), 0.0)};
  const CellIndex index(sc);
  std::vector<double> demand;
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t k = 0; k < K; ++k) {
      const auto members = index.flows_at(i, k);
      if (members.empty()) continue;
      demand.clear();
      for (std::size_t pos : members) demand.push_back(sc.flows[pos].demand_bw);
      const double p = sc.ratios(i, k);
      const auto bw = second_phase_allocate(demand, grant(i, k), p);
      for (std::size_t j = 0; j < members.size(); ++j) {
        out.bandwidth[members[j]] = bw[j];
        out.resource[members[j]] = bw[j] * p;
      }
    }
  }
  return out;
}

// A flow counts as QoE-satisfied only when its full demand is served.
inline std::size_t qoe_satisfied_count(const FlowAllocation& alloc,
                                       std::span<const Flow> flows) {
  std::size_t count = 0;
  for (std::size_t f = 0; f < flows.size(); ++f) {
    if (alloc.bandwidth[f] >= flows[f].demand_bw - 1e-9) ++count;
  }
  return count;
}

inline constexpr double kDefaultLogFloor = 1e-6;

// Linear: total served resource. Logarithmic: each flow's resource demand
// weights the log of its served resource (floored to stay finite).
inline double flow_utility(std::span<const double> resource,
                           std::span<const double> demand_resource,
                           UtilityKind kind,
                           double log_floor = kDefaultLogFloor) {
  double acc = 0.0;
  for (std::size_t f = 0; f < resource.size(); ++f) {
    acc += kind == UtilityKind::linear
               ? resource[f]
               : demand_resource[f] * std::log(std::max(resource[f], log_floor));
  }
  return acc;
}

inline std::vector<double> demand_resources(const Scenario& sc) {
  std::vector<double> out(sc.flows.size());
  for (std::size_t f = 0; f < sc.flows.size(); ++f) {
    const Flow& fl = sc.flows[f];
    out[f] = fl.demand_bw * sc.ratios(fl.element_id, fl.app_id);
  }
  return out;
}

inline double flow_utility(const FlowAllocation& alloc, const Scenario& sc,
                           UtilityKind kind,
                           double log_floor = kDefaultLogFloor) {
  return flow_utility(alloc.resource, demand_resources(sc), kind, log_floor);
}

}  // namespace soaran
