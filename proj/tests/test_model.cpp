#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "soaran/model.hpp"
#include "soaran/scenario.hpp"

using namespace soaran;

namespace {

Application app(std::size_t id, double lo, double hi) {
  Application a;
  a.id = id;
  a.min_share = lo;
  a.max_share = hi;
  return a;
}

ProblemInstance one_by_one() {
  return ProblemInstance({10.0}, Matrix{{2.0}}, Matrix{{8.0}}, Matrix{{1.0}},
                         UtilityKind::linear);
}

}  // namespace

TEST(ExpandBounds, SingleElementProportion) {
  const Bounds b = expand_bounds({app(0, 0.05, 0.40)}, {{0, 100.0}});
  EXPECT_DOUBLE_EQ(b.lower(0, 0), 5.0);
  EXPECT_DOUBLE_EQ(b.upper(0, 0), 40.0);
  EXPECT_DOUBLE_EQ(b.app_lower[0], 5.0);
  EXPECT_DOUBLE_EQ(b.app_upper[0], 40.0);
}

TEST(ExpandBounds, DefaultSharesOverTwoHundredThousand) {
  std::vector<Application> apps{app(0, 0.05, 0.40), app(1, 0.05, 0.40)};
  for (std::size_t k = 2; k < 100; ++k) apps.push_back(app(k, 0.0001, 0.9 / 98));
  std::vector<RadioElement> elems;
  for (std::size_t i = 0; i < 1000; ++i) elems.push_back({i, 200.0});
  const Bounds b = expand_bounds(apps, elems);
  EXPECT_NEAR(b.app_lower[0], 10000.0, 1e-6);
  EXPECT_NEAR(b.app_upper[0], 80000.0, 1e-6);
}

TEST(ExpandBounds, MinSharesOverOneAreInfeasible) {
  EXPECT_THROW(expand_bounds({app(0, 0.6, 0.7), app(1, 0.6, 0.7)}, {{0, 10.0}}),
               InfeasibleConfig);
}

TEST(ExpandBounds, AggregatesAreColumnSums) {
  const Scenario sc = generate_scenario(ScenarioParams::desk_scale(), 7);
  const Bounds b = expand_bounds(sc.apps, sc.elements);
  for (std::size_t k = 0; k < sc.apps.size(); ++k) {
    EXPECT_EQ(b.app_lower[k], b.lower.col_sum(k));
    EXPECT_EQ(b.app_upper[k], b.upper.col_sum(k));
  }
}

TEST(ExpandBounds, HomogeneousInCapacity) {
  std::vector<Application> apps{app(0, 0.1, 0.5), app(1, 0.2, 0.3)};
  std::vector<RadioElement> e1{{0, 30.0}, {1, 70.0}}, e2{{0, 90.0}, {1, 210.0}};
  const Bounds a = expand_bounds(apps, e1), b = expand_bounds(apps, e2);
  for (std::size_t j = 0; j < a.lower.size(); ++j) {
    EXPECT_NEAR(b.lower.flat()[j], 3.0 * a.lower.flat()[j], 1e-12);
    EXPECT_NEAR(b.upper.flat()[j], 3.0 * a.upper.flat()[j], 1e-12);
  }
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_NEAR(b.app_lower[k], 3.0 * a.app_lower[k], 1e-12);
    EXPECT_NEAR(b.app_upper[k], 3.0 * a.app_upper[k], 1e-12);
  }
}

TEST(CheckFeasible, LowerBoundPointIsFeasibleWithTightAppLower) {
  const ProblemInstance inst = one_by_one();
  const auto r = check_feasible(inst, inst.lower(), 0.0);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.app_lower, 0.0);
}

TEST(CheckFeasible, ElementOverload) {
  const ProblemInstance inst({10.0}, Matrix{{0.0, 0.0}}, Matrix{{8.0, 8.0}},
                             Matrix{{1.0, 1.0}}, UtilityKind::linear);
  const auto r = check_feasible(inst, Matrix{{6.0, 6.0}}, 1e-9);
  EXPECT_DOUBLE_EQ(r.element_capacity, 2.0);
  EXPECT_FALSE(r.feasible);
}

TEST(CheckFeasible, BoxViolation) {
  const auto r = check_feasible(one_by_one(), Matrix{{8.5}}, 1e-9);
  EXPECT_DOUBLE_EQ(r.box_upper, 0.5);
  EXPECT_FALSE(r.feasible);
}

TEST(CheckFeasible, ShapeMismatch) {
  EXPECT_THROW(check_feasible(one_by_one(), Matrix(2, 1), 1e-9),
               DimensionMismatch);
}

TEST(CheckFeasible, GeneratedScenariosAreFeasibleAtLowerBounds) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Scenario sc = generate_scenario(ScenarioParams::desk_scale(), seed);
    Bounds b = expand_bounds(sc.apps, sc.elements);
    std::vector<double> caps;
    for (const auto& e : sc.elements) caps.push_back(e.capacity);
    const ProblemInstance inst(caps, b.lower, b.upper, Matrix(b.lower.rows(), b.lower.cols()),
                               UtilityKind::logarithmic);
    EXPECT_TRUE(check_feasible(inst, inst.lower(), 0.0).feasible);
  }
}

TEST(ProblemInstance, RejectsBadData) {
  auto make = [](std::vector<double> caps, Matrix lo, Matrix hi, Matrix c,
                 UtilityKind kind) {
    return ProblemInstance(std::move(caps), std::move(lo), std::move(hi),
                           std::move(c), kind);
  };
  EXPECT_THROW(make({0.0}, Matrix{{0.0}}, Matrix{{1.0}}, Matrix{{1.0}},
                    UtilityKind::linear),
               InvalidInstance);
  EXPECT_THROW(make({10.0}, Matrix{{3.0}}, Matrix{{2.0}}, Matrix{{1.0}},
                    UtilityKind::linear),
               InvalidInstance);
  EXPECT_THROW(make({10.0}, Matrix{{0.0}}, Matrix{{2.0}}, Matrix{{1.0}},
                    UtilityKind::logarithmic),
               InvalidInstance);
  EXPECT_THROW(make({10.0}, Matrix{{0.0}}, Matrix{{2.0}}, Matrix{{-1.0}},
                    UtilityKind::linear),
               InvalidInstance);
  EXPECT_THROW(make({10.0}, Matrix{{6.0, 6.0}}, Matrix{{6.0, 6.0}},
                    Matrix{{1.0, 1.0}}, UtilityKind::linear),
               InvalidInstance);
  EXPECT_THROW(make({10.0}, Matrix{{0.0}}, Matrix(2, 1), Matrix{{1.0}},
                    UtilityKind::linear),
               DimensionMismatch);
}

TEST(Application, Validate) {
  EXPECT_THROW(app(0, 0.5, 0.4).validate(), InvalidParams);
  Application a = app(0, 0.1, 0.2);
  a.qoe_factor = 0.0;
  EXPECT_THROW(a.validate(), InvalidParams);
}

TEST(UtilityKindText, RoundTrip) {
  EXPECT_EQ(parse_utility_kind(to_string(UtilityKind::linear)),
            UtilityKind::linear);
  EXPECT_EQ(parse_utility_kind(to_string(UtilityKind::logarithmic)),
            UtilityKind::logarithmic);
  EXPECT_ANY_THROW(parse_utility_kind("cubic"));
}
