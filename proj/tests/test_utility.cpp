#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "soaran/model.hpp"
#include "soaran/scenario.hpp"
#include "soaran/utility.hpp"

using namespace soaran;

namespace {

Flow flow(std::size_t id, std::size_t i, std::size_t k, double bw) {
  return Flow{id, 0, k, i, bw};
}

TranslatingRatios ratios(std::size_t I, std::size_t K, double p) {
  return TranslatingRatios{Matrix(I, K, p)};
}

}  // namespace

TEST(EstimateDemand, NoFlowsIsZero) {
  const DemandMatrix d = estimate_demand({}, ratios(2, 3, 1.0));
  for (double v : d.values.flat()) EXPECT_EQ(v, 0.0);
}

TEST(EstimateDemand, SingleFlow) {
  const std::vector<Flow> flows{flow(0, 1, 0, 2.0)};
  const DemandMatrix d = estimate_demand(flows, ratios(2, 2, 1.5));
  EXPECT_DOUBLE_EQ(d(1, 0), 3.0);
  EXPECT_EQ(d(0, 0), 0.0);
}

TEST(EstimateDemand, SumThenScale) {
  const std::vector<Flow> flows{flow(0, 0, 0, 0.5), flow(1, 0, 0, 1.0),
                                flow(2, 0, 0, 0.5)};
  EXPECT_DOUBLE_EQ(estimate_demand(flows, ratios(1, 1, 2.0))(0, 0), 4.0);
}

TEST(EstimateDemand, UnknownCell) {
  const std::vector<Flow> flows{flow(0, 3, 0, 1.0)};
  EXPECT_THROW(estimate_demand(flows, ratios(2, 2, 1.0)), UnknownReference);
}

TEST(EstimateDemand, SplittingAFlowKeepsDemand) {
  const std::vector<Flow> one{flow(0, 0, 1, 3.0)};
  const std::vector<Flow> two{flow(0, 0, 1, 1.25), flow(1, 0, 1, 1.75)};
  EXPECT_DOUBLE_EQ(estimate_demand(one, ratios(1, 2, 0.7))(0, 1),
                   estimate_demand(two, ratios(1, 2, 0.7))(0, 1));
}

TEST(EstimateDemand, LinearInLoad) {
  const Scenario sc = generate_scenario(ScenarioParams::desk_scale(), 3);
  const DemandMatrix a = estimate_demand(sc.flows, sc.ratios);
  const Scenario scaled = scale_load(sc, 4.0);
  const DemandMatrix b = estimate_demand(scaled.flows, scaled.ratios);
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    EXPECT_NEAR(b.values.flat()[j], 4.0 * a.values.flat()[j],
                1e-12 * (1.0 + b.values.flat()[j]));
  }
}

TEST(UtilityValue, Examples) {
  EXPECT_DOUBLE_EQ(utility_value(UtilityKind::linear, 2.0, 3.0), 6.0);
  EXPECT_DOUBLE_EQ(utility_value(UtilityKind::logarithmic, 1.0, 1.0), 0.0);
  EXPECT_NEAR(utility_value(UtilityKind::logarithmic, 2.5, std::exp(2.0)), 5.0,
              1e-12);
}

TEST(UtilityValue, LogDomain) {
  EXPECT_THROW(utility_value(UtilityKind::logarithmic, 1.0, 0.0), DomainError);
  EXPECT_THROW(utility_value(UtilityKind::logarithmic, 1.0, -1.0), DomainError);
}

TEST(UtilityValue, MonotoneInResource) {
  for (UtilityKind kind : {UtilityKind::linear, UtilityKind::logarithmic}) {
    double prev = utility_value(kind, 1.7, 0.01);
    for (double s = 0.02; s < 50.0; s *= 1.3) {
      const double v = utility_value(kind, 1.7, s);
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(TotalUtility, Examples) {
  const ProblemInstance zero({10.0}, Matrix{{0.0, 0.0}}, Matrix{{5.0, 5.0}},
                             Matrix{{0.0, 0.0}}, UtilityKind::linear);
  EXPECT_EQ(total_utility(zero, Matrix{{2.0, 3.0}}), 0.0);

  const ProblemInstance one({10.0}, Matrix{{2.0}}, Matrix{{8.0}}, Matrix{{1.0}},
                            UtilityKind::linear);
  EXPECT_DOUBLE_EQ(total_utility(one, Matrix{{6.0}}), 6.0);

  const double e = std::exp(1.0);
  const ProblemInstance two({10.0, 10.0}, Matrix{{0.5, 0.5}, {0.5, 0.5}},
                            Matrix{{5.0, 5.0}, {5.0, 5.0}},
                            Matrix{{1.0, 2.0}, {3.0, 4.0}},
                            UtilityKind::logarithmic);
  EXPECT_NEAR(total_utility(two, Matrix{{1.0, e}, {e, 1.0}}), 5.0, 1e-12);
}

TEST(TotalUtility, LogIsStrictlyConcave) {
  const ProblemInstance inst({10.0, 10.0}, Matrix{{0.5, 0.5}, {0.5, 0.5}},
                             Matrix{{5.0, 5.0}, {5.0, 5.0}},
                             Matrix{{1.0, 2.0}, {3.0, 4.0}},
                             UtilityKind::logarithmic);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.5, 5.0);
  for (int rep = 0; rep < 100; ++rep) {
    Matrix a(2, 2), b(2, 2), mid(2, 2);
    for (std::size_t j = 0; j < 4; ++j) {
      a.flat()[j] = u(rng);
      b.flat()[j] = u(rng);
      mid.flat()[j] = 0.5 * (a.flat()[j] + b.flat()[j]);
    }
    EXPECT_GT(total_utility(inst, mid),
              0.5 * (total_utility(inst, a) + total_utility(inst, b)));
  }
}
