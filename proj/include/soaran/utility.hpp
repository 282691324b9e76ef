#pragma once

#include <cmath>
#include <span>
#include <string>

#include "soaran/error.hpp"
#include "soaran/matrix.hpp"
#include "soaran/model.hpp"

namespace soaran {

// p_i^k: resource units needed per Mbps of application k at element i.
struct TranslatingRatios {
  Matrix values;

  double operator()(std::size_t i, std::size_t k) const noexcept {
    return values(i, k);
  }

  void validate() const {
    for (double p : values.flat()) {
      if (!(p > 0.0) || !std::isfinite(p)) {
        throw InvalidParams("translating ratios must be positive");
      }
    }
  }
};

// d_i^k: resource units demanded in the current period.
struct DemandMatrix {
  Matrix values;

  double operator()(std::size_t i, std::size_t k) const noexcept {
    return values(i, k);
  }
};

// Current-period demand: d_i^k = p_i^k * (sum of flow bandwidth at (i,k)).
inline DemandMatrix estimate_demand(std::span<const Flow> flows,
                                    const TranslatingRatios& ratios) {
  const std::size_t I = ratios.values.rows(), K = ratios.values.cols();
  Matrix bw(I, K);
  for (const Flow& f : flows) {
    if (f.element_id >= I || f.app_id >= K) {
      throw UnknownReference("flow " + std::to_string(f.id) +
                             " references cell outside the scenario");
    }
    bw(f.element_id, f.app_id) += f.demand_bw;
  }
  DemandMatrix d{Matrix(I, K)};
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t k = 0; k < K; ++k) {
      d.values(i, k) = ratios(i, k) * bw(i, k);
    }
  }
  return d;
}

inline double utility_value(UtilityKind kind, double coeff, double s) {
  if (kind == UtilityKind::linear) return coeff * s;
  if (!(s > 0.0)) {
    throw DomainError("logarithmic utility needs positive resource, got " +
                      std::to_string(s));
  }
  return coeff * std::log(s);
}

// First derivative of utility_value with respect to s.
inline double utility_slope(UtilityKind kind, double coeff, double s) noexcept {
  return kind == UtilityKind::linear ? coeff : coeff / s;
}

inline double total_utility(const ProblemInstance& inst,
                            const AllocationMatrix& s) {
  if (!s.same_shape(inst.coeff())) {
    throw DimensionMismatch("allocation shape does not match instance");
  }
  const auto c = inst.coeff().flat();
  const auto x = s.flat();
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    acc += utility_value(inst.utility_kind(), c[j], x[j]);
  }
  return acc;
}

}  // namespace soaran
