#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "soaran/error.hpp"
#include "soaran/matrix.hpp"

namespace soaran {

// Abstract application: a service class with its own QoE stringency and
// aggregate share bounds (fractions of the total RAN resource).
struct Application {
  std::size_t id = 0;
  int priority = 0;
  double qoe_factor = 1.0;  // resource units per Mbps
  double min_share = 0.0;
  double max_share = 1.0;

  void validate() const {
    if (!(qoe_factor > 0.0)) {
      throw InvalidParams("application " + std::to_string(id) +
                          ": qoe_factor must be positive");
    }
    if (!(min_share >= 0.0 && min_share <= max_share && max_share <= 1.0)) {
      throw InvalidParams("application " + std::to_string(id) +
                          ": shares must satisfy 0 <= min <= max <= 1");
    }
  }
};

struct RadioElement {
  std::size_t id = 0;
  double capacity = 0.0;  // B_i, abstract resource units

  void validate() const {
    if (!(capacity > 0.0) || !std::isfinite(capacity)) {
      throw InvalidParams("element " + std::to_string(id) +
                          ": capacity must be positive");
    }
  }
};

struct Entity {
  std::size_t id = 0;
  std::string name;
};

struct Flow {
  std::size_t id = 0;
  std::size_t entity_id = 0;
  std::size_t app_id = 0;
  std::size_t element_id = 0;
  double demand_bw = 0.0;  // Mbps

  friend bool operator==(const Flow&, const Flow&) = default;
};

enum class UtilityKind { linear, logarithmic };

inline std::string_view to_string(UtilityKind kind) noexcept {
  return kind == UtilityKind::linear ? "linear" : "log";
}

inline UtilityKind parse_utility_kind(std::string_view text) {
  if (text == "linear") return UtilityKind::linear;
  if (text == "log" || text == "logarithmic") return UtilityKind::logarithmic;
  throw InvalidParams("unknown utility kind '" + std::string(text) + "'");
}

// Decision variables s_i^k. Feasibility is a property checked against an
// instance (check_feasible), never enforced here.
using AllocationMatrix = Matrix;

// The allocation problem: maximize sum of u_i^k(s_i^k) subject to element
// capacities, per-application aggregate bounds and per-cell boxes.
//
// Aggregate bounds are derived from the boxes, L^k = sum_i l_i^k and
// M^k = sum_i m_i^k, so the identity holds by construction.
class ProblemInstance {
 public:
  ProblemInstance(std::vector<double> capacities, Matrix lower, Matrix upper,
                  Matrix coeff, UtilityKind kind)
      : capacities_(std::move(capacities)),
        lower_(std::move(lower)),
        upper_(std::move(upper)),
        coeff_(std::move(coeff)),
        kind_(kind) {
    const std::size_t I = capacities_.size();
    if (I == 0 || lower_.cols() == 0) {
      throw InvalidInstance("instance needs at least one element and app");
    }
    if (lower_.rows() != I || !lower_.same_shape(upper_) ||
        !lower_.same_shape(coeff_)) {
      throw DimensionMismatch("instance matrices must all be |I| x |K|");
    }
    const std::size_t K = lower_.cols();

    aggregate_ = 0.0;
    for (std::size_t i = 0; i < I; ++i) {
      if (!(capacities_[i] > 0.0) || !std::isfinite(capacities_[i])) {
        throw InvalidInstance("capacity B_" + std::to_string(i) +
                              " must be positive");
      }
      aggregate_ += capacities_[i];
    }

    for (std::size_t i = 0; i < I; ++i) {
      for (std::size_t k = 0; k < K; ++k) {
        const double l = lower_(i, k), m = upper_(i, k), c = coeff_(i, k);
        if (!(l >= 0.0 && l <= m) || !std::isfinite(m)) {
          throw InvalidInstance("box bounds violate 0 <= l <= m at cell (" +
                                std::to_string(i) + "," + std::to_string(k) +
                                ")");
        }
        if (!(c >= 0.0) || !std::isfinite(c)) {
          throw InvalidInstance("utility coefficients must be non-negative");
        }
        if (kind_ == UtilityKind::logarithmic && !(l > 0.0)) {
          throw InvalidInstance(
              "logarithmic utility requires strictly positive lower bounds");
        }
      }
      const double slack_tol = 1e-12 * capacities_[i];
      if (lower_.row_sum(i) > capacities_[i] + slack_tol) {
        throw InvalidInstance("lower bounds exceed capacity at element " +
                              std::to_string(i));
      }
    }

    app_lower_.resize(K);
    app_upper_.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
      app_lower_[k] = lower_.col_sum(k);
      app_upper_[k] = upper_.col_sum(k);
      if (app_upper_[k] > aggregate_ * (1.0 + 1e-12)) {
        throw InvalidInstance("application upper bound exceeds B for app " +
                              std::to_string(k));
      }
    }
  }

  std::size_t num_elements() const noexcept { return capacities_.size(); }
  std::size_t num_apps() const noexcept { return lower_.cols(); }
  std::size_t num_vars() const noexcept { return lower_.size(); }

  const std::vector<double>& capacities() const noexcept { return capacities_; }
  double capacity(std::size_t i) const noexcept { return capacities_[i]; }
  const Matrix& lower() const noexcept { return lower_; }
  const Matrix& upper() const noexcept { return upper_; }
  const Matrix& coeff() const noexcept { return coeff_; }
  const std::vector<double>& app_lower() const noexcept { return app_lower_; }
  const std::vector<double>& app_upper() const noexcept { return app_upper_; }
  UtilityKind utility_kind() const noexcept { return kind_; }
  double aggregate_capacity() const noexcept { return aggregate_; }

 private:
  std::vector<double> capacities_;
  Matrix lower_;
  Matrix upper_;
  Matrix coeff_;
  UtilityKind kind_;
  std::vector<double> app_lower_;
  std::vector<double> app_upper_;
  double aggregate_ = 0.0;
};

struct Bounds {
  Matrix lower;  // l_i^k
  Matrix upper;  // m_i^k
  std::vector<double> app_lower;  // L^k
  std::vector<double> app_upper;  // M^k
};

// Splits each application's share fractions proportionally over elements:
// l_i^k = min_share_k * B_i and m_i^k = max_share_k * B_i.
inline Bounds expand_bounds(const std::vector<Application>& apps,
                            const std::vector<RadioElement>& elements) {
  double min_total = 0.0;
  for (const auto& a : apps) {
    a.validate();
    min_total += a.min_share;
  }
  for (const auto& e : elements) e.validate();
  if (min_total > 1.0 + 1e-12) {
    throw InfeasibleConfig("sum of application min shares exceeds 1 (" +
                           std::to_string(min_total) + ")");
  }

  const std::size_t I = elements.size(), K = apps.size();
  Bounds b{Matrix(I, K), Matrix(I, K), std::vector<double>(K, 0.0),
           std::vector<double>(K, 0.0)};
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t k = 0; k < K; ++k) {
      b.lower(i, k) = apps[k].min_share * elements[i].capacity;
      b.upper(i, k) = apps[k].max_share * elements[i].capacity;
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    b.app_lower[k] = b.lower.col_sum(k);
    b.app_upper[k] = b.upper.col_sum(k);
  }
  return b;
}

// Largest violation per constraint family; a negative value is slack.
struct FeasibilityReport {
  double element_capacity = 0.0;  // max_i sum_k s_i^k - B_i
  double app_upper = 0.0;         // max_k sum_i s_i^k - M^k
  double app_lower = 0.0;         // max_k L^k - sum_i s_i^k
  double box_lower = 0.0;         // max l_i^k - s_i^k
  double box_upper = 0.0;         // max s_i^k - m_i^k
  bool feasible = false;

  double worst() const noexcept {
    return std::max({element_capacity, app_upper, app_lower, box_lower,
                     box_upper});
  }
};

inline FeasibilityReport check_feasible(const ProblemInstance& inst,
                                        const AllocationMatrix& s,
                                        double tol) {
  if (!s.same_shape(inst.lower())) {
    throw DimensionMismatch("allocation shape does not match instance");
  }
  constexpr double lowest = -std::numeric_limits<double>::infinity();
  FeasibilityReport r{lowest, lowest, lowest, lowest, lowest, false};
  const std::size_t I = inst.num_elements(), K = inst.num_apps();
  for (std::size_t i = 0; i < I; ++i) {
    r.element_capacity =
        std::max(r.element_capacity, s.row_sum(i) - inst.capacity(i));
    for (std::size_t k = 0; k < K; ++k) {
      r.box_lower = std::max(r.box_lower, inst.lower()(i, k) - s(i, k));
      r.box_upper = std::max(r.box_upper, s(i, k) - inst.upper()(i, k));
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    const double col = s.col_sum(k);
    r.app_upper = std::max(r.app_upper, col - inst.app_upper()[k]);
    r.app_lower = std::max(r.app_lower, inst.app_lower()[k] - col);
  }
  r.feasible = !(r.worst() > tol);
  return r;
}

}  // namespace soaran
