#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "soaran/error.hpp"
#include "soaran/matrix.hpp"
#include "soaran/model.hpp"
#include "soaran/utility.hpp"

namespace soaran {

struct SolverConfig {
  double epsilon = 1e-3;        // target suboptimality
  double t0 = 1.0;              // initial barrier multiplier
  double mu = 10.0;             // multiplier growth per outer iteration
  double inner_tol = 1e-8;      // stationarity of the scaled inner problem
  std::size_t max_inner_iters = 500;
  std::size_t max_outer_iters = 200;
  double interior_shift = 0.5;  // theta in (0,1), see interior_start
  bool record_trace = true;

  void validate() const {
    if (!(epsilon > 0.0)) throw InvalidParams("solver: epsilon must be > 0");
    if (!(t0 > 0.0)) throw InvalidParams("solver: t0 must be > 0");
    if (!(mu > 1.0)) throw InvalidParams("solver: mu must be > 1");
    if (!(inner_tol > 0.0)) throw InvalidParams("solver: inner_tol must be > 0");
    if (!(interior_shift > 0.0 && interior_shift < 1.0)) {
      throw InvalidParams("solver: interior_shift must lie in (0,1)");
    }
  }
};

enum class InnerStatus { converged, max_iters, stalled };

struct InnerResult {
  AllocationMatrix allocation;
  std::size_t iterations = 0;
  double stationarity = 0.0;  // norm of the box-projected gradient
  double decrement = 0.0;     // last Newton decrement (scaled objective)
  InnerStatus status = InnerStatus::converged;
};

// One record per outer iteration; record 0 is the centering at t0.
struct TraceRecord {
  std::size_t outer = 0;
  double t = 0.0;
  double utility = 0.0;
  double barrier = 0.0;
  double gap_bound = 0.0;
  std::size_t inner_iters = 0;
  double stationarity = 0.0;
  InnerStatus status = InnerStatus::converged;
};

struct SolveResult {
  AllocationMatrix allocation;
  double objective = 0.0;
  double gap_bound = 0.0;  // (B + |K|) / t_final
  double t_final = 0.0;
  std::size_t outer_iters = 0;
  std::size_t inner_iters_total = 0;
  std::size_t inner_stalls = 0;
  bool converged = false;
  std::vector<TraceRecord> trace;
};

inline double gap_bound(const ProblemInstance& inst, double t) {
  return (inst.aggregate_capacity() + static_cast<double>(inst.num_apps())) /
         t;
}

namespace detail {

// Barrier terms of the interior problem restricted to the constraints that
// still involve a free variable. A cell is free iff m_i^k > l_i^k; a row or
// column without free cells contributes a constant and is dropped.
class BarrierModel {
 public:
  BarrierModel(const ProblemInstance& inst, bool all_terms)
      : inst_(&inst),
        free_(inst.num_vars(), 0),
        elem_active_(inst.num_elements(), all_terms ? 1 : 0),
        app_active_(inst.num_apps(), all_terms ? 1 : 0) {
    const std::size_t I = inst.num_elements(), K = inst.num_apps();
    for (std::size_t i = 0; i < I; ++i) {
      for (std::size_t k = 0; k < K; ++k) {
        if (inst.upper()(i, k) > inst.lower()(i, k)) {
          free_[i * K + k] = 1;
          elem_active_[i] = 1;
          app_active_[k] = 1;
          ++num_free_;
        }
      }
    }
  }

  const ProblemInstance& instance() const noexcept { return *inst_; }
  bool is_free(std::size_t j) const noexcept { return free_[j] != 0; }
  bool elem_active(std::size_t i) const noexcept { return elem_active_[i]; }
  bool app_active(std::size_t k) const noexcept { return app_active_[k]; }
  std::size_t num_free() const noexcept { return num_free_; }

  struct Slacks {
    std::vector<double> elem;  // B_i - sum_k s_i^k
    std::vector<double> up;    // M^k - sum_i s_i^k
    std::vector<double> low;   // sum_i s_i^k - L^k
  };

  // Fills the slacks; false when an active term is not strictly positive.
  bool slacks(const AllocationMatrix& s, Slacks& out) const {
    const auto& inst = *inst_;
    const std::size_t I = inst.num_elements(), K = inst.num_apps();
    out.elem.assign(I, 0.0);
    out.up.assign(K, 0.0);
    out.low.assign(K, 0.0);
    std::vector<double> col(K, 0.0);
    for (std::size_t i = 0; i < I; ++i) {
      double row = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        row += s(i, k);
        col[k] += s(i, k);
      }
      out.elem[i] = inst.capacity(i) - row;
    }
    bool ok = true;
    for (std::size_t i = 0; i < I; ++i) {
      if (elem_active_[i] && !(out.elem[i] > 0.0)) ok = false;
    }
    for (std::size_t k = 0; k < K; ++k) {
      out.up[k] = inst.app_upper()[k] - col[k];
      out.low[k] = col[k] - inst.app_lower()[k];
      if (app_active_[k] && !(out.up[k] > 0.0 && out.low[k] > 0.0)) ok = false;
    }
    return ok;
  }

  double barrier(const Slacks& sl) const {
    double phi = 0.0;
    for (std::size_t i = 0; i < sl.elem.size(); ++i) {
      if (elem_active_[i]) phi += std::log(sl.elem[i]);
    }
    for (std::size_t k = 0; k < sl.up.size(); ++k) {
      if (app_active_[k]) phi += std::log(sl.up[k]) + std::log(sl.low[k]);
    }
    return phi;
  }

  // (t * grad u + grad phi) * scale, written to out.
  void gradient(const AllocationMatrix& s, const Slacks& sl, double t,
                double scale, std::span<double> out) const {
    const auto& inst = *inst_;
    const std::size_t I = inst.num_elements(), K = inst.num_apps();
    const auto kind = inst.utility_kind();
    std::vector<double> app_term(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      if (app_active_[k]) app_term[k] = 1.0 / sl.low[k] - 1.0 / sl.up[k];
    }
    for (std::size_t i = 0; i < I; ++i) {
      const double elem_term = elem_active_[i] ? 1.0 / sl.elem[i] : 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        const double du =
            t > 0.0 ? t * utility_slope(kind, inst.coeff()(i, k), s(i, k))
                    : 0.0;
        out[i * K + k] = (du - elem_term + app_term[k]) * scale;
      }
    }
  }

 private:
  const ProblemInstance* inst_;
  std::vector<char> free_;
  std::vector<char> elem_active_;
  std::vector<char> app_active_;
  std::size_t num_free_ = 0;
};

inline void require_shape(const ProblemInstance& inst,
                          const AllocationMatrix& s) {
  if (!s.same_shape(inst.lower())) {
    throw DimensionMismatch("allocation shape does not match instance");
  }
}

inline double clamp_box(double v, double lo, double hi) noexcept {
  return std::min(std::max(v, lo), hi);
}

// Utility with t == 0 contributing nothing, so coefficients never matter for
// the analytic center.
inline double scaled_utility(const ProblemInstance& inst,
                             const AllocationMatrix& s, double t) {
  return t > 0.0 ? t * total_utility(inst, s) : 0.0;
}

// Exact change of t*u + phi between s and s + step, summed term by term so
// that small improvements are not lost against a large objective value.
inline double objective_change(const BarrierModel& model,
                               const AllocationMatrix& s,
                               const BarrierModel::Slacks& sl,
                               std::span<const double> step, double t) {
  const auto& inst = model.instance();
  const std::size_t I = inst.num_elements(), K = inst.num_apps();
  const auto c = inst.coeff().flat();
  const auto x = s.flat();
  double du = 0.0;
  if (t > 0.0) {
    if (inst.utility_kind() == UtilityKind::linear) {
      for (std::size_t j = 0; j < x.size(); ++j) du += c[j] * step[j];
    } else {
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (step[j] != 0.0 && c[j] != 0.0) {
          du += c[j] * std::log1p(step[j] / x[j]);
        }
      }
    }
  }
  std::vector<double> col(K, 0.0);
  double dphi = 0.0;
  for (std::size_t i = 0; i < I; ++i) {
    double row = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      row += step[i * K + k];
      col[k] += step[i * K + k];
    }
    if (model.elem_active(i)) dphi += std::log1p(-row / sl.elem[i]);
  }
  for (std::size_t k = 0; k < K; ++k) {
    if (!model.app_active(k)) continue;
    dphi += std::log1p(-col[k] / sl.up[k]) + std::log1p(col[k] / sl.low[k]);
  }
  return t * du + dphi;
}

// Newton system of the negated interior Hessian on the free, non-binding
// cells. The Hessian is diag(D) plus one rank-one block per element row and
// one per application column, so rows are inverted by Sherman-Morrison and
// the column terms by a |K| x |K| Woodbury correction.
class NewtonSystem {
 public:
  void factor(const BarrierModel& model, const AllocationMatrix& s,
              const BarrierModel::Slacks& sl, double t, double scale,
              std::span<const char> solve_mask) {
    const auto& inst = model.instance();
    I_ = inst.num_elements();
    K_ = inst.num_apps();
    h_.assign(I_ * K_, 0.0);
    gamma_.assign(I_, 0.0);
    sqrt_beta_.assign(K_, 0.0);

    std::vector<double> alpha(I_, 0.0);
    for (std::size_t i = 0; i < I_; ++i) {
      if (model.elem_active(i)) {
        alpha[i] = scale / (sl.elem[i] * sl.elem[i]);
      }
    }
    std::vector<double> beta(K_, 0.0);
    for (std::size_t k = 0; k < K_; ++k) {
      if (model.app_active(k)) {
        beta[k] = scale * (1.0 / (sl.up[k] * sl.up[k]) +
                           1.0 / (sl.low[k] * sl.low[k]));
        sqrt_beta_[k] = std::sqrt(beta[k]);
      }
    }

    const bool log_kind = inst.utility_kind() == UtilityKind::logarithmic;
    for (std::size_t i = 0; i < I_; ++i) {
      double row_h = 0.0;
      for (std::size_t k = 0; k < K_; ++k) {
        const std::size_t j = i * K_ + k;
        if (!solve_mask[j]) continue;
        double d = 0.0;
        if (log_kind && t > 0.0) {
          const double x = s(i, k);
          d = t * scale * inst.coeff()(i, k) / (x * x);
        }
        // Directions along which only the box constrains the objective
        // get a tiny curvature so the step runs out to the box.
        d += kRegularization * (alpha[i] + beta[k]) +
             std::numeric_limits<double>::min();
        h_[j] = 1.0 / d;
        row_h += h_[j];
      }
      gamma_[i] = alpha[i] / (1.0 + alpha[i] * row_h);
    }

    Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(K_, K_);
    for (std::size_t i = 0; i < I_; ++i) {
      Eigen::Map<const Eigen::VectorXd> hi(h_.data() + i * K_, K_);
      coupling.diagonal() += hi;
      if (gamma_[i] != 0.0) {
        coupling.selfadjointView<Eigen::Lower>().rankUpdate(hi, -gamma_[i]);
      }
    }
    coupling.triangularView<Eigen::StrictlyUpper>() =
        coupling.transpose().triangularView<Eigen::StrictlyUpper>();
    Eigen::VectorXd sb = Eigen::Map<const Eigen::VectorXd>(sqrt_beta_.data(),
                                                           K_);
    Eigen::MatrixXd capacitance = sb.asDiagonal() * coupling * sb.asDiagonal();
    capacitance.diagonal().array() += 1.0;
    llt_.compute(capacitance);
  }

  // Solves for d on the masked cells; other entries of d are left at zero.
  void solve(std::span<const double> rhs, std::span<double> d) const {
    std::vector<double> y(rhs.size());
    apply_row_inverse(rhs, y);
    Eigen::VectorXd proj = Eigen::VectorXd::Zero(K_);
    for (std::size_t i = 0; i < I_; ++i) {
      for (std::size_t k = 0; k < K_; ++k) proj[k] += y[i * K_ + k];
    }
    for (std::size_t k = 0; k < K_; ++k) proj[k] *= sqrt_beta_[k];
    const Eigen::VectorXd z = llt_.solve(proj);
    std::vector<double> back(rhs.size());
    for (std::size_t i = 0; i < I_; ++i) {
      for (std::size_t k = 0; k < K_; ++k) {
        back[i * K_ + k] = sqrt_beta_[k] * z[k];
      }
    }
    std::vector<double> corr(rhs.size());
    apply_row_inverse(back, corr);
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = y[j] - corr[j];
  }

 private:
  static constexpr double kRegularization = 1e-9;

  void apply_row_inverse(std::span<const double> v,
                         std::span<double> out) const {
    for (std::size_t i = 0; i < I_; ++i) {
      double w = 0.0;
      for (std::size_t k = 0; k < K_; ++k) {
        w += h_[i * K_ + k] * v[i * K_ + k];
      }
      for (std::size_t k = 0; k < K_; ++k) {
        const std::size_t j = i * K_ + k;
        out[j] = h_[j] * (v[j] - gamma_[i] * w);
      }
    }
  }

  std::size_t I_ = 0, K_ = 0;
  std::vector<double> h_;
  std::vector<double> gamma_;
  std::vector<double> sqrt_beta_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

inline double box_projected_norm(const ProblemInstance& inst,
                                 const AllocationMatrix& s,
                                 std::span<const double> grad) {
  const auto x = s.flat();
  const auto lo = inst.lower().flat();
  const auto hi = inst.upper().flat();
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double step = clamp_box(x[j] + grad[j], lo[j], hi[j]) - x[j];
    acc += step * step;
  }
  return std::sqrt(acc);
}

inline bool inside_boxes(const ProblemInstance& inst,
                         const AllocationMatrix& s) {
  const auto x = s.flat();
  const auto lo = inst.lower().flat();
  const auto hi = inst.upper().flat();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < lo[j] || x[j] > hi[j]) return false;
  }
  return true;
}

// Projected Newton ascent on (t*u + phi)/scale over the boxes, with Armijo
// backtracking along the projection arc. Falls back to a diagonally scaled
// projected gradient step when the Newton arc yields no increase.
inline InnerResult solve_inner_impl(const BarrierModel& model,
                                    AllocationMatrix s, double t,
                                    const SolverConfig& cfg) {
  constexpr double kArmijo = 1e-4;
  constexpr double kContraction = 0.5;
  constexpr double kBoundaryFraction = 1e-12;
  constexpr int kMaxBacktracks = 80;

  const auto& inst = model.instance();
  const std::size_t n = inst.num_vars();
  const std::size_t K = inst.num_apps();
  const double scale = 1.0 / std::max(t, 1.0);
  const auto lo = inst.lower().flat();
  const auto hi = inst.upper().flat();

  InnerResult res;
  BarrierModel::Slacks sl, trial_sl;
  if (!model.slacks(s, sl)) {
    throw NotInterior("solve_inner: starting point is not strictly interior");
  }

  std::vector<double> grad(n), dir(n), step(n), rhs(n);
  std::vector<char> solve_mask(n);
  AllocationMatrix trial = s;
  NewtonSystem newton;

  for (std::size_t iter = 0;; ++iter) {
    assert(inside_boxes(inst, s));
    model.gradient(s, sl, t, scale, grad);
    res.stationarity = box_projected_norm(inst, s, grad);
    res.iterations = iter;
    if (res.stationarity <= cfg.inner_tol) {
      res.status = InnerStatus::converged;
      break;
    }
    if (iter >= cfg.max_inner_iters) {
      res.status = InnerStatus::max_iters;
      break;
    }

    // Cells whose gradient pushes them into a nearby bound are held there,
    // unless a barrier slack would close before the bound is reached.
    const double eps_active = std::min(res.stationarity, 1e-3);
    const auto x = s.flat();
    double binding_gap = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      bool binding = !model.is_free(j);
      if (!binding) {
        const std::size_t i = j / K, k = j % K;
        const double width = hi[j] - lo[j];
        const double eps = std::min(eps_active, 0.5 * width);
        const double to_lo = x[j] - lo[j], to_hi = hi[j] - x[j];
        if (to_lo <= eps && grad[j] < 0.0) {
          binding = !model.app_active(k) || sl.low[k] > to_lo;
        } else if (to_hi <= eps && grad[j] > 0.0) {
          binding = (!model.elem_active(i) || sl.elem[i] > to_hi) &&
                    (!model.app_active(k) || sl.up[k] > to_hi);
        }
        if (binding) binding_gap += grad[j] > 0.0 ? to_hi : to_lo;
      }
      solve_mask[j] = binding ? 0 : 1;
      rhs[j] = binding ? 0.0 : grad[j];
    }
    newton.factor(model, s, sl, t, scale, solve_mask);
    newton.solve(rhs, dir);

    double decrement = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (solve_mask[j]) decrement += grad[j] * dir[j];
    }
    res.decrement = decrement;
    if (0.5 * decrement <= cfg.inner_tol * cfg.inner_tol &&
        binding_gap <= cfg.inner_tol) {
      res.status = InnerStatus::converged;
      break;
    }

    // Binding but free cells move by a diagonally scaled gradient so the
    // projection pins them to the bound.
    for (std::size_t j = 0; j < n; ++j) {
      if (solve_mask[j] || !model.is_free(j)) {
        if (!model.is_free(j)) dir[j] = 0.0;
        continue;
      }
      dir[j] = grad[j] * (hi[j] - lo[j]);
    }

    auto line_search = [&](std::span<const double> d) {
      double alpha = 1.0;
      for (int bt = 0; bt < kMaxBacktracks; ++bt, alpha *= kContraction) {
        double predicted = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double v = model.is_free(j)
                               ? clamp_box(x[j] + alpha * d[j], lo[j], hi[j])
                               : x[j];
          step[j] = v - x[j];
          trial.flat()[j] = v;
          predicted += grad[j] * step[j];
        }
        if (!(predicted > 0.0)) continue;
        if (!model.slacks(trial, trial_sl)) continue;
        bool keeps_distance = true;
        for (std::size_t i = 0; i < sl.elem.size() && keeps_distance; ++i) {
          if (model.elem_active(i) &&
              trial_sl.elem[i] < kBoundaryFraction * sl.elem[i]) {
            keeps_distance = false;
          }
        }
        for (std::size_t k = 0; k < K && keeps_distance; ++k) {
          if (model.app_active(k) &&
              (trial_sl.up[k] < kBoundaryFraction * sl.up[k] ||
               trial_sl.low[k] < kBoundaryFraction * sl.low[k])) {
            keeps_distance = false;
          }
        }
        if (!keeps_distance) continue;
        const double gain = objective_change(model, s, sl, step, t) * scale;
        if (gain >= kArmijo * predicted && gain > 0.0) return true;
      }
      return false;
    };

    bool accepted = line_search(dir);
    if (!accepted) {
      for (std::size_t j = 0; j < n; ++j) {
        dir[j] = model.is_free(j) ? grad[j] * (hi[j] - lo[j]) : 0.0;
      }
      accepted = line_search(dir);
    }
    if (!accepted) {
      res.status = InnerStatus::stalled;
      break;
    }
    std::swap(s, trial);
    std::swap(sl, trial_sl);
    trial = s;
  }
  res.allocation = std::move(s);
  return res;
}

}  // namespace detail

// phi(s): sum of log-slacks of the element, application-upper and
// application-lower constraints.
inline double barrier_value(const ProblemInstance& inst,
                            const AllocationMatrix& s) {
  detail::require_shape(inst, s);
  const detail::BarrierModel model(inst, true);
  detail::BarrierModel::Slacks sl;
  if (!model.slacks(s, sl)) {
    throw NotInterior("barrier_value: point is not strictly interior");
  }
  return model.barrier(sl);
}

inline double interior_objective(const ProblemInstance& inst,
                                 const AllocationMatrix& s, double t) {
  const double phi = barrier_value(inst, s);
  return detail::scaled_utility(inst, s, t) + phi;
}

inline Matrix interior_gradient(const ProblemInstance& inst,
                                const AllocationMatrix& s, double t) {
  detail::require_shape(inst, s);
  const detail::BarrierModel model(inst, true);
  detail::BarrierModel::Slacks sl;
  if (!model.slacks(s, sl)) {
    throw NotInterior("interior_gradient: point is not strictly interior");
  }
  Matrix g(inst.num_elements(), inst.num_apps());
  model.gradient(s, sl, t, 1.0, g.flat());
  return g;
}

// Starting point l + delta with
//   delta_i^k = theta * min((B_i - sum_k l_i^k)/|K|, (m-l)/2, (M^k-L^k)/(2|I|))
// on free cells. Pinned cells (m == l) stay at l.
inline AllocationMatrix interior_start(const ProblemInstance& inst,
                                       double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw InvalidParams("interior_start: theta must lie in (0,1)");
  }
  const std::size_t I = inst.num_elements(), K = inst.num_apps();
  const detail::BarrierModel model(inst, false);
  AllocationMatrix s = inst.lower();
  for (std::size_t i = 0; i < I; ++i) {
    const double elem_room =
        (inst.capacity(i) - inst.lower().row_sum(i)) / static_cast<double>(K);
    for (std::size_t k = 0; k < K; ++k) {
      if (!model.is_free(i * K + k)) continue;
      if (!(elem_room > 0.0)) {
        throw EmptyInterior("element " + std::to_string(i) +
                            " has free variables but no spare capacity");
      }
      const double box_room = 0.5 * (inst.upper()(i, k) - inst.lower()(i, k));
      const double app_room =
          (inst.app_upper()[k] - inst.app_lower()[k]) / (2.0 * I);
      s(i, k) += theta * std::min({elem_room, box_room, app_room});
    }
  }
  detail::BarrierModel::Slacks sl;
  if (!model.slacks(s, sl)) {
    throw EmptyInterior("no strictly interior point exists");
  }
  return s;
}

inline InnerResult solve_inner(const ProblemInstance& inst,
                               const AllocationMatrix& s_start, double t,
                               const SolverConfig& cfg) {
  detail::require_shape(inst, s_start);
  if (!(t >= 0.0)) throw InvalidParams("solve_inner: t must be >= 0");
  if (!detail::inside_boxes(inst, s_start)) {
    throw NotInterior("solve_inner: starting point violates the boxes");
  }
  const detail::BarrierModel model(inst, false);
  return detail::solve_inner_impl(model, s_start, t, cfg);
}

// Barrier method: center at t0, then repeatedly grow t by mu and re-center
// from the previous solution until (B + |K|)/t <= epsilon.
inline SolveResult solve(const ProblemInstance& inst,
                         const SolverConfig& cfg) {
  cfg.validate();
  const detail::BarrierModel model(inst, false);
  AllocationMatrix s = interior_start(inst, cfg.interior_shift);

  SolveResult out;
  double t = cfg.t0;
  bool inner_ok = true;
  auto center = [&](std::size_t outer) {
    InnerResult r = detail::solve_inner_impl(model, std::move(s), t, cfg);
    s = std::move(r.allocation);
    out.inner_iters_total += r.iterations;
    if (r.status == InnerStatus::max_iters) inner_ok = false;
    if (r.status == InnerStatus::stalled) ++out.inner_stalls;
    if (cfg.record_trace) {
      detail::BarrierModel::Slacks sl;
      model.slacks(s, sl);
      out.trace.push_back({outer, t, total_utility(inst, s), model.barrier(sl),
                           gap_bound(inst, t), r.iterations, r.stationarity,
                           r.status});
    }
  };

  center(0);
  while (gap_bound(inst, t) > cfg.epsilon &&
         out.outer_iters < cfg.max_outer_iters) {
    t *= cfg.mu;
    ++out.outer_iters;
    center(out.outer_iters);
  }

  out.t_final = t;
  out.gap_bound = gap_bound(inst, t);
  out.converged = inner_ok && out.gap_bound <= cfg.epsilon;
  out.objective = total_utility(inst, s);
  out.allocation = std::move(s);
  return out;
}

inline std::string_view to_string(InnerStatus status) noexcept {
  switch (status) {
    case InnerStatus::converged: return "converged";
    case InnerStatus::max_iters: return "max_iters";
    case InnerStatus::stalled: return "stalled";
  }
  return "unknown";
}

}  // namespace soaran
