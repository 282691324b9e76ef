#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "soaran/error.hpp"
#include "soaran/matrix.hpp"
#include "soaran/model.hpp"
#include "soaran/utility.hpp"

// Reference optimizers for small instances. Neither method shares code with
// the barrier solver: the grid search only evaluates the objective and the
// constraint sums, and the projection method never touches a barrier.

namespace soaran {

enum class OracleMethod { grid_refine, long_run_projected_gradient };

struct OracleResult {
  double objective = 0.0;
  AllocationMatrix allocation;
  OracleMethod method = OracleMethod::grid_refine;
  double certified_tol = 0.0;
};

inline constexpr std::size_t kGridOracleMaxVars = 6;

namespace oracle_detail {

inline bool coupling_ok(const ProblemInstance& inst,
                        const std::vector<double>& x) {
  const std::size_t I = inst.num_elements(), K = inst.num_apps();
  for (std::size_t i = 0; i < I; ++i) {
    double row = 0.0;
    for (std::size_t k = 0; k < K; ++k) row += x[i * K + k];
    if (row > inst.capacity(i) + 1e-12 * std::max(1.0, inst.capacity(i))) {
      return false;
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    double col = 0.0;
    for (std::size_t i = 0; i < I; ++i) col += x[i * K + k];
    const double scale = 1e-12 * std::max(1.0, inst.app_upper()[k]);
    if (col > inst.app_upper()[k] + scale ||
        col < inst.app_lower()[k] - scale) {
      return false;
    }
  }
  return true;
}

inline double objective(const ProblemInstance& inst,
                        const std::vector<double>& x) {
  const auto c = inst.coeff().flat();
  double acc = 0.0;
  if (inst.utility_kind() == UtilityKind::linear) {
    for (std::size_t j = 0; j < x.size(); ++j) acc += c[j] * x[j];
  } else {
    for (std::size_t j = 0; j < x.size(); ++j) acc += c[j] * std::log(x[j]);
  }
  return acc;
}

inline double lipschitz(const ProblemInstance& inst) {
  const auto c = inst.coeff().flat();
  const auto l = inst.lower().flat();
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double g =
        inst.utility_kind() == UtilityKind::linear ? c[j] : c[j] / l[j];
    acc += g * g;
  }
  return std::sqrt(acc);
}

inline AllocationMatrix to_matrix(const ProblemInstance& inst,
                                  const std::vector<double>& x) {
  AllocationMatrix s(inst.num_elements(), inst.num_apps());
  std::copy(x.begin(), x.end(), s.flat().begin());
  return s;
}

// Evaluates every feasible point of a tensor grid; returns true when the
// incumbent improved. Ties keep the earlier incumbent.
inline bool scan_grid(const ProblemInstance& inst,
                      const std::vector<std::vector<double>>& axes,
                      std::vector<double>& best, double& best_val) {
  const std::size_t n = axes.size();
  for (const auto& a : axes) {
    if (a.empty()) return false;
  }
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n);
  bool improved = false;
  for (;;) {
    for (std::size_t j = 0; j < n; ++j) x[j] = axes[j][idx[j]];
    if (coupling_ok(inst, x)) {
      const double v = objective(inst, x);
      if (v > best_val) {
        best_val = v;
        best = x;
        improved = true;
      }
    }
    std::size_t j = 0;
    while (j < n && ++idx[j] == axes[j].size()) idx[j++] = 0;
    if (j == n) break;
  }
  return improved;
}

inline OracleResult grid_refine(const ProblemInstance& inst, double tol) {
  const std::size_t n = inst.num_vars();
  if (n > kGridOracleMaxVars) {
    throw TooLarge("grid oracle handles at most " +
                   std::to_string(kGridOracleMaxVars) + " variables, got " +
                   std::to_string(n));
  }
  const auto lo = inst.lower().flat();
  const auto hi = inst.upper().flat();
  std::size_t free_dims = 0;
  for (std::size_t j = 0; j < n; ++j) free_dims += hi[j] > lo[j] ? 1 : 0;
  const auto per_dim = static_cast<std::size_t>(std::clamp(
      std::floor(std::pow(2.0e5, 1.0 / std::max<std::size_t>(free_dims, 1))),
      5.0, 1001.0));

  std::vector<std::vector<double>> axes(n);
  std::vector<double> spacing(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(hi[j] > lo[j])) {
      axes[j] = {lo[j]};
      continue;
    }
    spacing[j] = (hi[j] - lo[j]) / static_cast<double>(per_dim - 1);
    for (std::size_t p = 0; p < per_dim; ++p) {
      axes[j].push_back(p + 1 == per_dim ? hi[j] : lo[j] + p * spacing[j]);
    }
  }

  std::vector<double> best(lo.begin(), lo.end());
  double best_val = -std::numeric_limits<double>::infinity();
  if (coupling_ok(inst, best)) best_val = objective(inst, best);
  scan_grid(inst, axes, best, best_val);
  if (!std::isfinite(best_val)) {
    throw EmptyInterior("grid oracle found no feasible point");
  }

  // Local 7-point-per-axis grids around the incumbent. One spacing is shared
  // by all axes so that lattice moves can follow a capacity face; it shrinks
  // by 3 only once the incumbent stops moving.
  constexpr int kHalf = 3;
  double h = *std::max_element(spacing.begin(), spacing.end()) / 3.0;
  std::size_t moves_at_level = 0;
  while (h >= tol) {
    for (std::size_t j = 0; j < n; ++j) {
      axes[j].clear();
      if (!(hi[j] > lo[j])) {
        axes[j].push_back(lo[j]);
        continue;
      }
      for (int r = -kHalf; r <= kHalf; ++r) {
        const double v = best[j] + r * h;
        if (v >= lo[j] && v <= hi[j]) axes[j].push_back(v);
      }
      // Box endpoints inside the window are always candidates.
      if (best[j] - kHalf * h < lo[j]) axes[j].push_back(lo[j]);
      if (best[j] + kHalf * h > hi[j]) axes[j].push_back(hi[j]);
    }
    const bool moved = scan_grid(inst, axes, best, best_val);
    if (moved && ++moves_at_level < 1000) continue;
    moves_at_level = 0;
    h /= 3.0;
  }

  OracleResult r;
  r.objective = best_val;
  r.allocation = to_matrix(inst, best);
  r.method = OracleMethod::grid_refine;
  r.certified_tol =
      lipschitz(inst) * 3.0 * h * std::sqrt(static_cast<double>(n));
  return r;
}

// Projection of y onto {lo <= x <= hi, a <= sum x <= b}: x = clamp(y - lambda)
// with lambda found by bisection on the monotone sum.
inline void project_box_sum(std::span<double> y, std::span<const double> lo,
                            std::span<const double> hi, double a, double b) {
  auto sum_at = [&](double lambda) {
    double acc = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      acc += std::clamp(y[j] - lambda, lo[j], hi[j]);
    }
    return acc;
  };
  const double s0 = sum_at(0.0);
  double target;
  if (s0 > b) {
    target = b;
  } else if (s0 < a) {
    target = a;
  } else {
    for (std::size_t j = 0; j < y.size(); ++j) {
      y[j] = std::clamp(y[j], lo[j], hi[j]);
    }
    return;
  }
  double span = 1.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    span = std::max({span, std::abs(y[j] - lo[j]), std::abs(y[j] - hi[j])});
  }
  double left = s0 > b ? 0.0 : -span, right = s0 > b ? span : 0.0;
  for (int it = 0; it < 200 && right - left > 0.0; ++it) {
    const double mid = 0.5 * (left + right);
    if (mid == left || mid == right) break;
    if (sum_at(mid) > target) {
      left = mid;
    } else {
      right = mid;
    }
  }
  // Keep the side of the bracket that satisfies the sum constraint.
  const double lambda = s0 > b ? right : left;
  for (std::size_t j = 0; j < y.size(); ++j) {
    y[j] = std::clamp(y[j] - lambda, lo[j], hi[j]);
  }
}

// Dykstra's alternating projection onto (rows: box and element capacity)
// intersected with (columns: box and application bounds).
class PolytopeProjector {
 public:
  explicit PolytopeProjector(const ProblemInstance& inst) : inst_(&inst) {}

  std::vector<double> project(const std::vector<double>& y) const {
    const auto& inst = *inst_;
    const std::size_t I = inst.num_elements(), K = inst.num_apps();
    const std::size_t n = y.size();
    const auto lo = inst.lower().flat();
    const auto hi = inst.upper().flat();
    double scale = 1.0;
    for (double v : y) scale = std::max(scale, std::abs(v));

    std::vector<double> x = y, p(n, 0.0), q(n, 0.0), a(n), b(n);
    std::vector<double> col(I), col_lo(I), col_hi(I);
    for (int it = 0; it < kMaxIters; ++it) {
      for (std::size_t j = 0; j < n; ++j) a[j] = x[j] + p[j];
      for (std::size_t i = 0; i < I; ++i) {
        project_box_sum(std::span<double>(a).subspan(i * K, K),
                        lo.subspan(i * K, K), hi.subspan(i * K, K),
                        -std::numeric_limits<double>::infinity(),
                        inst.capacity(i));
      }
      for (std::size_t j = 0; j < n; ++j) {
        p[j] = x[j] + p[j] - a[j];
        b[j] = a[j] + q[j];
      }
      for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t i = 0; i < I; ++i) {
          col[i] = b[i * K + k];
          col_lo[i] = lo[i * K + k];
          col_hi[i] = hi[i * K + k];
        }
        project_box_sum(col, col_lo, col_hi, inst.app_lower()[k],
                        inst.app_upper()[k]);
        for (std::size_t i = 0; i < I; ++i) b[i * K + k] = col[i];
      }
      double change = 0.0, gap = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        q[j] = a[j] + q[j] - b[j];
        change = std::max(change, std::abs(b[j] - x[j]));
        gap = std::max(gap, std::abs(b[j] - a[j]));
      }
      x = b;
      if (change <= 1e-15 * scale && gap <= 1e-13 * scale) return x;
    }
    throw ProjectionNotConverged("Dykstra projection did not converge");
  }

 private:
  static constexpr int kMaxIters = 200000;
  const ProblemInstance* inst_;
};

inline OracleResult long_run_pg(const ProblemInstance& inst) {
  constexpr double kStationarity = 1e-12;
  constexpr int kMaxIters = 100000;
  const std::size_t n = inst.num_vars();
  const auto c = inst.coeff().flat();
  const auto lo = inst.lower().flat();
  const auto hi = inst.upper().flat();
  const bool linear = inst.utility_kind() == UtilityKind::linear;
  const PolytopeProjector proj(inst);

  double width = 0.0;
  for (std::size_t j = 0; j < n; ++j) width = std::max(width, hi[j] - lo[j]);
  width = std::max(width, 1e-300);

  std::vector<double> x = proj.project({lo.begin(), lo.end()});
  std::vector<double> g(n), y(n), xn;
  double fx = objective(inst, x);
  double step = 1.0;
  double mapping = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxIters; ++it) {
    double gmax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      g[j] = linear ? c[j] : c[j] / x[j];
      gmax = std::max(gmax, std::abs(g[j]));
    }
    if (gmax == 0.0) {
      mapping = 0.0;
      break;
    }
    step = std::min(step * 2.0, 1e4 * width / gmax);
    // Backtrack until the quadratic model upper-bounds the loss.
    for (;;) {
      for (std::size_t j = 0; j < n; ++j) y[j] = x[j] + step * g[j];
      xn = proj.project(y);
      const double fn = objective(inst, xn);
      double lin = 0.0, sq = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double d = xn[j] - x[j];
        lin += g[j] * d;
        sq += d * d;
      }
      if (fn >= fx + lin - sq / (2.0 * step) - 1e-15 * std::abs(fx) ||
          step < 1e-300) {
        break;
      }
      step *= 0.5;
    }
    double move = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      move = std::max(move, std::abs(xn[j] - x[j]));
    }
    mapping = move / step;
    const double fn = objective(inst, xn);
    if (fn >= fx) {
      x = xn;
      fx = fn;
    }
    if (mapping <= kStationarity || move <= 1e-15 * width) break;
  }

  OracleResult r;
  r.objective = fx;
  r.allocation = to_matrix(inst, x);
  r.method = OracleMethod::long_run_projected_gradient;
  double diam = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    diam += (hi[j] - lo[j]) * (hi[j] - lo[j]);
  }
  r.certified_tol = mapping * std::sqrt(diam);
  return r;
}

}  // namespace oracle_detail

// grid_refine stops once the grid spacing drops below tol; the projection
// method runs to a gradient-mapping norm of 1e-12 and ignores tol.
inline OracleResult oracle_solve(
    const ProblemInstance& inst, double tol,
    OracleMethod method = OracleMethod::grid_refine) {
  if (!(tol > 0.0)) throw InvalidParams("oracle: tol must be positive");
  if (method == OracleMethod::grid_refine) {
    return oracle_detail::grid_refine(inst, tol);
  }
  return oracle_detail::long_run_pg(inst);
}

inline std::string_view to_string(OracleMethod m) noexcept {
  return m == OracleMethod::grid_refine ? "grid_refine"
                                        : "long_run_projected_gradient";
}

}  // namespace soaran
