#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "soaran/model.hpp"
#include "soaran/solver.hpp"
#include "support/random_instances.hpp"

using namespace soaran;

namespace {

ProblemInstance one_by_one(double c = 1.0) {
  return ProblemInstance({10.0}, Matrix{{2.0}}, Matrix{{8.0}}, Matrix{{c}},
                         UtilityKind::linear);
}

// Symmetric 2 x 2 instance with zero coefficients.
ProblemInstance symmetric_zero() {
  return ProblemInstance({10.0, 10.0}, Matrix{{1.0, 1.0}, {1.0, 1.0}},
                         Matrix{{6.0, 6.0}, {6.0, 6.0}},
                         Matrix{{0.0, 0.0}, {0.0, 0.0}}, UtilityKind::linear);
}

// Root of g on (lo, hi) with g(lo) > 0 > g(hi), by plain bisection.
template <class G>
double bisect(G g, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// A random point strictly inside the barrier domain and the boxes.
Matrix random_interior(const ProblemInstance& inst, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  Matrix s = interior_start(inst, u(rng));
  const Matrix base = s;
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (std::size_t i = 0; i < inst.num_elements(); ++i) {
      for (std::size_t k = 0; k < inst.num_apps(); ++k) {
        const double lo = inst.lower()(i, k), hi = inst.upper()(i, k);
        const double b = base(i, k);
        // Stay within a fraction of the way towards either bound.
        const double r = u(rng) * 0.5;
        s(i, k) = (attempt % 2 == 0) ? b + r * (hi - b) : b - r * (b - lo);
      }
    }
    try {
      barrier_value(inst, s);
      return s;
    } catch (const NotInterior&) {
    }
  }
  return base;
}

}  // namespace

TEST(GapBound, Arithmetic) {
  EXPECT_NEAR(gap_bound(one_by_one(), 1100.0), 0.01, 1e-15);
  const ProblemInstance inst = one_by_one();
  EXPECT_NEAR(gap_bound(inst, 7.0) / gap_bound(inst, 70.0), 10.0, 1e-12);
}

TEST(GapBound, FullScaleThreshold) {
  // B = 200,000 and |K| = 100: the loop exits once t >= 200,100.
  std::vector<double> caps(1000, 200.0);
  const ProblemInstance inst(caps, Matrix(1000, 100), Matrix(1000, 100, 2.0),
                             Matrix(1000, 100), UtilityKind::linear);
  EXPECT_LE(gap_bound(inst, 200100.0), 1.0);
  EXPECT_GT(gap_bound(inst, 200099.0), 1.0);
}

TEST(BarrierValue, OneByOne) {
  EXPECT_NEAR(barrier_value(one_by_one(), Matrix{{4.0}}), std::log(48.0), 1e-12);
}

TEST(BarrierValue, UnitSlacksGiveZero) {
  // B = 3, L = 1, M = 3: s = 2 leaves element slack 1, upper 1, lower 1.
  const ProblemInstance inst({3.0}, Matrix{{1.0}}, Matrix{{3.0}}, Matrix{{1.0}},
                             UtilityKind::linear);
  EXPECT_NEAR(barrier_value(inst, Matrix{{2.0}}), 0.0, 1e-15);
}

TEST(BarrierValue, BoundaryIsNotInterior) {
  EXPECT_THROW(barrier_value(one_by_one(), Matrix{{2.0}}), NotInterior);
  EXPECT_THROW(barrier_value(one_by_one(), Matrix{{8.0}}), NotInterior);
}

TEST(InteriorObjective, Examples) {
  const ProblemInstance inst = one_by_one();
  const Matrix s{{4.0}};
  EXPECT_DOUBLE_EQ(interior_objective(inst, s, 0.0), barrier_value(inst, s));
  EXPECT_NEAR(interior_objective(inst, s, 2.0), 8.0 + std::log(48.0), 1e-12);
  const ProblemInstance zero = symmetric_zero();
  const Matrix z{{2.0, 2.0}, {2.0, 2.0}};
  EXPECT_DOUBLE_EQ(interior_objective(zero, z, 3.0),
                   interior_objective(zero, z, 6.0));
}

TEST(InteriorGradient, HandValue) {
  const Matrix g = interior_gradient(one_by_one(), Matrix{{4.0}}, 1.0);
  EXPECT_NEAR(g(0, 0), 13.0 / 12.0, 1e-14);
}

TEST(InteriorGradient, SymmetricCellsMatch) {
  const Matrix g =
      interior_gradient(symmetric_zero(), Matrix{{2.0, 2.0}, {2.0, 2.0}}, 5.0);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_DOUBLE_EQ(g.flat()[j], g.flat()[0]);
}

TEST(InteriorGradient, MatchesCentralDifferences) {
  constexpr double h = 1e-6;
  std::mt19937_64 rng(2024);
  int points = 0;
  for (UtilityKind kind : {UtilityKind::linear, UtilityKind::logarithmic}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const ProblemInstance inst =
          soaran::testing::random_small_instance(seed * 7 + 1, kind);
      const Matrix s = random_interior(inst, rng);
      const double t = std::pow(10.0, std::uniform_real_distribution<>(-1, 2)(rng));
      const Matrix g = interior_gradient(inst, s, t);
      for (std::size_t j = 0; j < s.size(); ++j) {
        Matrix up = s, dn = s;
        up.flat()[j] += h;
        dn.flat()[j] -= h;
        const double fd = (interior_objective(inst, up, t) -
                           interior_objective(inst, dn, t)) / (2 * h);
        EXPECT_LE(std::abs(fd - g.flat()[j]),
                  1e-5 * std::max(1.0, std::abs(g.flat()[j])))
            << "seed " << seed << " cell " << j;
      }
      ++points;
    }
  }
  EXPECT_GE(points, 100);
}

TEST(InteriorStart, OneByOneIsStrictlyInterior) {
  const ProblemInstance inst = one_by_one();
  const Matrix s = interior_start(inst, 0.5);
  // delta = 0.5 * min(8, 3, 3) = 1.5
  EXPECT_DOUBLE_EQ(s(0, 0), 3.5);
  EXPECT_NO_THROW(barrier_value(inst, s));
}

TEST(InteriorStart, FullyPinned) {
  const ProblemInstance inst({10.0, 10.0}, Matrix{{2.0, 3.0}, {1.0, 1.0}},
                             Matrix{{2.0, 3.0}, {1.0, 1.0}},
                             Matrix{{1.0, 1.0}, {1.0, 1.0}}, UtilityKind::linear);
  const Matrix s = interior_start(inst, 0.5);
  EXPECT_EQ(s, inst.lower());
  const SolveResult r = solve(inst, SolverConfig{});
  EXPECT_EQ(r.allocation, inst.lower());
  EXPECT_TRUE(r.converged);
}

TEST(InteriorStart, SaturatedElementHasNoInterior) {
  const ProblemInstance inst({10.0}, Matrix{{5.0, 5.0}}, Matrix{{8.0, 8.0}},
                             Matrix{{1.0, 1.0}}, UtilityKind::linear);
  EXPECT_THROW(interior_start(inst, 0.5), EmptyInterior);
  EXPECT_THROW(solve(inst, SolverConfig{}), EmptyInterior);
}

TEST(InteriorStart, RejectsBadTheta) {
  EXPECT_THROW(interior_start(one_by_one(), 0.0), InvalidParams);
  EXPECT_THROW(interior_start(one_by_one(), 1.0), InvalidParams);
}

TEST(SolveInner, OneByOneMatchesScalarRoot) {
  const ProblemInstance inst = one_by_one();
  const double t = 1000.0;
  const double root = bisect(
      [t](double s) { return t - 1 / (10 - s) - 1 / (8 - s) + 1 / (s - 2); },
      2.0 + 1e-12, 8.0 - 1e-12);
  const InnerResult r = solve_inner(inst, interior_start(inst, 0.5), t, SolverConfig{});
  EXPECT_EQ(r.status, InnerStatus::converged);
  EXPECT_NEAR(r.allocation(0, 0), root, 1e-7);
  EXPECT_NEAR(r.allocation(0, 0), 8.0, 2.0 / t);
}

TEST(SolveInner, ZeroCoefficientsReachAnalyticCenter) {
  const ProblemInstance inst = symmetric_zero();
  const InnerResult r =
      solve_inner(inst, interior_start(inst, 0.3), 10.0, SolverConfig{});
  for (std::size_t j = 1; j < 4; ++j) {
    EXPECT_NEAR(r.allocation.flat()[j], r.allocation.flat()[0], 1e-7);
  }
}

TEST(SolveInner, TZeroIgnoresCoefficients) {
  const ProblemInstance a({10.0, 12.0}, Matrix{{1.0, 1.0}, {1.0, 1.0}},
                          Matrix{{6.0, 7.0}, {6.0, 6.0}},
                          Matrix{{0.0, 0.0}, {0.0, 0.0}}, UtilityKind::linear);
  const ProblemInstance b({10.0, 12.0}, Matrix{{1.0, 1.0}, {1.0, 1.0}},
                          Matrix{{6.0, 7.0}, {6.0, 6.0}},
                          Matrix{{5.0, 1.0}, {0.2, 3.0}}, UtilityKind::linear);
  const InnerResult ra = solve_inner(a, interior_start(a, 0.5), 0.0, SolverConfig{});
  const InnerResult rb = solve_inner(b, interior_start(b, 0.5), 0.0, SolverConfig{});
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(ra.allocation.flat()[j], rb.allocation.flat()[j], 1e-7);
  }
}

TEST(SolveInner, RejectsOutOfBoxStart) {
  EXPECT_THROW(solve_inner(one_by_one(), Matrix{{9.0}}, 1.0, SolverConfig{}),
               NotInterior);
}

TEST(Solve, OneByOneReachesEight) {
  SolverConfig cfg;
  cfg.epsilon = 1e-3;
  const SolveResult r = solve(one_by_one(), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.objective, 8.0, cfg.epsilon);
  EXPECT_LE(r.gap_bound, cfg.epsilon);
  EXPECT_TRUE(check_feasible(one_by_one(), r.allocation, 1e-9).feasible);
}

TEST(Solve, ZeroCoefficientsStayFeasible) {
  const SolveResult r = solve(symmetric_zero(), SolverConfig{});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.objective, 0.0);
  EXPECT_TRUE(check_feasible(symmetric_zero(), r.allocation, 1e-9).feasible);
}

TEST(Solve, OuterIterationCount) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 25; ++rep) {
    const ProblemInstance inst =
        soaran::testing::random_small_instance(900 + rep, UtilityKind::linear);
    SolverConfig cfg;
    cfg.epsilon = std::pow(10.0, -1.0 - 3.0 * u(rng));
    cfg.mu = 2.0 + 18.0 * u(rng);
    cfg.t0 = std::pow(10.0, -1.0 + 2.0 * u(rng));
    cfg.record_trace = true;
    const double ratio = (inst.aggregate_capacity() + inst.num_apps()) /
                         (cfg.t0 * cfg.epsilon);
    const auto expected = static_cast<std::size_t>(
        std::max(0.0, std::ceil(std::log(ratio) / std::log(cfg.mu))));
    const SolveResult r = solve(inst, cfg);
    EXPECT_EQ(r.outer_iters, expected) << "rep " << rep;
    ASSERT_EQ(r.trace.size(), r.outer_iters + 1);
    for (std::size_t j = 1; j < r.trace.size(); ++j) {
      EXPECT_NEAR(r.trace[j - 1].gap_bound / r.trace[j].gap_bound, cfg.mu,
                  1e-9 * cfg.mu);
    }
  }
}

TEST(Solve, LogOptimumIndependentOfStart) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ProblemInstance inst =
        soaran::testing::random_small_instance(300 + seed, UtilityKind::logarithmic);
    SolverConfig a, b;
    a.interior_shift = 0.2;
    b.interior_shift = 0.8;
    EXPECT_LE(std::abs(solve(inst, a).objective - solve(inst, b).objective),
              2 * a.epsilon);
  }
}

TEST(Solve, RandomInstancesFeasible) {
  for (UtilityKind kind : {UtilityKind::linear, UtilityKind::logarithmic}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const ProblemInstance inst = soaran::testing::random_small_instance(seed, kind);
      const SolveResult r = solve(inst, SolverConfig{});
      EXPECT_TRUE(r.converged);
      EXPECT_TRUE(check_feasible(inst, r.allocation, 1e-9).feasible);
    }
  }
}

TEST(SolverConfig, Validate) {
  SolverConfig c;
  c.mu = 1.0;
  EXPECT_THROW(c.validate(), InvalidParams);
  c = {};
  c.epsilon = 0.0;
  EXPECT_THROW(c.validate(), InvalidParams);
  c = {};
  c.interior_shift = 1.0;
  EXPECT_THROW(c.validate(), InvalidParams);
}
