#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fundadmin/errors.hpp"
#include "fundadmin/optimizer.hpp"

using namespace fundadmin;

namespace {

const FundSpec kRef{50000, 5000, 0.05, 0.54, "kZAR"};

// Brute-force oracle: best PortSR over a uniform y grid, evaluated directly
// from the model formulas rather than through the library.
struct GridBest {
  double y;
  double port_sr;
};

GridBest grid_max(const FundSpec& s, const ResponseModel& r, double y_max, std::size_t points) {
  GridBest best{0.0, -1.0};
  for (std::size_t i = 0; i < points; ++i) {
    const double y = y_max * static_cast<double>(i) / static_cast<double>(points - 1);
    const double ar = (s.base_cost_fraction * s.project_value + y) / (s.project_value + y);
    const double uplift = r.kind() == ResponseKind::linear ? std::min(r.c() * y, r.max_delta())
                                                           : r.c() * (1.0 - std::exp(-r.k() * y));
    const double v = (1.0 - ar) * std::min(1.0, s.intrinsic_success_rate + uplift);
    if (v > best.port_sr) best = {y, v};
  }
  return best;
}

double port_sr_at_ar(const FundSpec& s, const ResponseModel& r, double ar) {
  return evaluate_at_ar(s, r, ar).port_sr;
}

}  // namespace

TEST(OptimizeAr, LinearAtCap) {
  const auto r = ResponseModel::linear(2e-4, 0.3);
  const OptimumResult opt = optimize_ar(kRef, r);
  EXPECT_EQ(opt.boundary, BoundaryFlag::at_cap);
  EXPECT_NEAR(opt.point.y, 1500.0, 1e-9);
  EXPECT_NEAR(opt.point.ar, 1750.0 / 6500.0, 1e-15);
  EXPECT_NEAR(opt.point.port_sr, (1.0 - 1750.0 / 6500.0) * 0.84, 1e-15);
  EXPECT_NEAR(opt.point.port_sr, 0.613846, 1e-6);
  const GridBest g = grid_max(kRef, r, 5000.0, 50001);
  EXPECT_GE(opt.point.port_sr, g.port_sr - 1e-12);
  EXPECT_TRUE(opt.exceeds_rarely_justifiable);
}

TEST(OptimizeAr, LinearAtBase) {
  const OptimumResult opt = optimize_ar(kRef, ResponseModel::linear(5e-5, 0.3));
  EXPECT_EQ(opt.boundary, BoundaryFlag::at_base);
  EXPECT_EQ(opt.point.y, 0.0);
  EXPECT_DOUBLE_EQ(opt.point.ar, 0.05);
  EXPECT_NEAR(opt.point.port_sr, 0.513, 1e-15);
  EXPECT_FALSE(opt.exceeds_rarely_justifiable);
}

TEST(OptimizeAr, LinearCapRespectsPsrClamp) {
  // PSR_in + maxΔ > 1: spending beyond 1 - PSR_in buys nothing.
  const FundSpec s{50000, 5000, 0.05, 0.9, "kZAR"};
  const auto r = ResponseModel::linear(1e-3, 0.5);
  const OptimumResult opt = optimize_ar(s, r);
  EXPECT_NEAR(opt.point.y, 100.0, 1e-9);
  EXPECT_GE(opt.point.port_sr, grid_max(s, r, 2000.0, 200001).port_sr - 1e-12);
}

TEST(OptimizeAr, LinearSlopeLaw) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double vi = 100.0 + 1e4 * u(rng);
    const FundSpec s{vi * 20.0, vi, 0.1 * u(rng), 0.2 + 0.5 * u(rng), "kZAR"};
    const double c = 2.0 * u(rng) / vi;
    const auto r = ResponseModel::linear(c, 1.0 - s.intrinsic_success_rate);
    const double ar_cap = ar_from_y(s, r.max_delta() / c);
    const double a0 = s.base_cost_fraction + 0.25 * (ar_cap - s.base_cost_fraction);
    const double a1 = s.base_cost_fraction + 0.75 * (ar_cap - s.base_cost_fraction);
    const double slope = (port_sr_at_ar(s, r, a1) - port_sr_at_ar(s, r, a0)) / (a1 - a0);
    const double expected = c * vi - s.intrinsic_success_rate;
    EXPECT_NEAR(slope, expected, 1e-9 * std::max(1.0, std::fabs(expected)));
  }
}

TEST(OptimizeAr, SaturatingReferenceScenario) {
  const auto r = ResponseModel::saturating(0.3, 0.002);
  // Brute force at step 0.1 over [0, 5000].
  const GridBest g = grid_max(kRef, r, 5000.0, 50001);
  EXPECT_NEAR(g.y, 747.9, 0.2);
  const OptimumResult opt = optimize_ar(kRef, r);
  EXPECT_EQ(opt.boundary, BoundaryFlag::interior);
  EXPECT_GE(opt.point.port_sr, g.port_sr - 1e-12);
  EXPECT_NEAR(opt.point.ar, 0.173611, 1e-5);
  EXPECT_NEAR(opt.point.port_sr, 0.638616, 1e-6);
  EXPECT_NEAR(opt.point.ar, 0.173, 0.005);
  EXPECT_NEAR(opt.point.port_sr, 0.639, 0.002);
  EXPECT_LT(opt.point.ar, 0.20);
  EXPECT_FALSE(opt.exceeds_rarely_justifiable);
  EXPECT_GT(opt.evaluations, 1000u);
}

TEST(OptimizeAr, SaturatingStationarity) {
  const auto r = ResponseModel::saturating(0.3, 0.002);
  const OptimumResult opt = optimize_ar(kRef, r);
  const double h = 1e-5;
  const double grad = (port_sr_at_ar(kRef, r, opt.point.ar + h) - port_sr_at_ar(kRef, r, opt.point.ar - h)) / (2 * h);
  EXPECT_LE(std::fabs(grad), 1e-6);
}

TEST(OptimizeAr, SaturatingDominatesDenseGrid) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double vi = 50.0 + 2e4 * u(rng);
    const FundSpec s{vi * (5.0 + 100.0 * u(rng)), vi, 0.15 * u(rng), 0.1 + 0.8 * u(rng), "kZAR"};
    const auto r = ResponseModel::saturating(0.05 + 0.6 * u(rng), std::pow(10.0, -5.0 + 3.0 * u(rng)) * 5000.0 / vi);
    const OptimumResult opt = optimize_ar(s, r);
    const GridBest g = grid_max(s, r, search_upper_bound(s, r), 100000);
    EXPECT_GE(opt.point.port_sr, g.port_sr - 1e-7) << "case " << i;
  }
}

TEST(OptimizeAr, SaturatingFlatResponseStaysAtBase) {
  const OptimumResult opt = optimize_ar(kRef, ResponseModel::saturating(0.0, 0.01));
  EXPECT_EQ(opt.boundary, BoundaryFlag::at_base);
  EXPECT_EQ(opt.point.y, 0.0);
}

TEST(RequiredArForMinPsr, Examples) {
  const auto r = ResponseModel::saturating(0.3, 0.002);
  const PortfolioPoint base = required_ar_for_min_psr(kRef, r, 0.5);
  EXPECT_EQ(base.y, 0.0);
  EXPECT_DOUBLE_EQ(base.ar, 0.05);

  const PortfolioPoint p = required_ar_for_min_psr(kRef, r, 0.7);
  const double y = -std::log(1.0 - 0.16 / 0.3) / 0.002;
  EXPECT_NEAR(p.y, y, 1e-9);
  EXPECT_NEAR(p.y, 381.07, 0.01);
  EXPECT_NEAR(p.ar, (250.0 + y) / (5000.0 + y), 1e-12);
  EXPECT_NEAR(p.ar, 0.117276, 1e-6);
  EXPECT_GE(p.psr, 0.7);

  EXPECT_THROW(required_ar_for_min_psr(kRef, r, 0.9), UnreachableTargetError);
  EXPECT_THROW(required_ar_for_min_psr(kRef, r, 1.1), ValidationError);
}

TEST(RequiredArForMinPsr, MeetsTargetExactly) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double psr_in = 0.8 * u(rng);
    const FundSpec s{50000, 5000, 0.05, psr_in, "kZAR"};
    const double c = (1.0 - psr_in) * (0.1 + 0.9 * u(rng));
    const ResponseModel r = i % 2 ? ResponseModel::saturating(c, 1e-4 + 0.01 * u(rng))
                                  : ResponseModel::linear(1e-5 + 1e-3 * u(rng), c);
    const double psr_min = psr_in + 0.99 * c * u(rng);
    EXPECT_GE(required_ar_for_min_psr(s, r, psr_min).psr, psr_min);
  }
}

TEST(Solve, DispatchesOnPreference) {
  const auto r = ResponseModel::saturating(0.3, 0.002);
  EXPECT_EQ(solve(kRef, r, RiskPreference::maximize()).point.port_sr, optimize_ar(kRef, r).point.port_sr);
  const OptimumResult m = solve(kRef, r, RiskPreference::minimum_psr(0.7));
  EXPECT_NEAR(m.point.y, 381.07, 0.01);
  EXPECT_EQ(solve(kRef, r, RiskPreference::minimum_psr(0.3)).boundary, BoundaryFlag::at_base);
  EXPECT_THROW(RiskPreference::minimum_psr(-0.1), ValidationError);
}

TEST(Sweep, BasePointAndOrder) {
  const auto r = ResponseModel::saturating(0.3, 0.002);
  const std::vector<double> base = {0.05};
  const auto one = sweep(kRef, r, base);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].y, 0.0);
  EXPECT_NEAR(one[0].port_sr, 0.95 * 0.54, 1e-15);

  const std::vector<double> grid = {0.3, 0.05, 0.2};
  const auto pts = sweep(kRef, r, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(pts[i].ar, grid[i]);
}

TEST(Sweep, SaturatingCurveIsUnimodalNearOptimum) {
  const auto r = ResponseModel::saturating(0.3, 0.002);
  const auto grid = make_grid(0.05, 0.50, 0.05);
  ASSERT_EQ(grid.size(), 10u);
  const auto pts = sweep(kRef, r, grid);
  std::size_t peak = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].port_sr > pts[peak].port_sr) peak = i;
  }
  for (std::size_t i = 1; i <= peak; ++i) EXPECT_GT(pts[i].port_sr, pts[i - 1].port_sr);
  for (std::size_t i = peak + 1; i < pts.size(); ++i) EXPECT_LT(pts[i].port_sr, pts[i - 1].port_sr);
  EXPECT_NEAR(grid[peak], 0.173, 0.05);
}

TEST(Sweep, RejectsOutOfRangeValues) {
  const auto r = ResponseModel::saturating(0.3, 0.002);
  const std::vector<double> low = {0.1, 0.04};
  try {
    sweep(kRef, r, low);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("0.04"), std::string::npos);
  }
  const std::vector<double> high = {1.0};
  EXPECT_THROW(sweep(kRef, r, high), ValidationError);
}

TEST(Sweep, IsDeterministic) {
  const auto r = ResponseModel::linear(2e-4, 0.3);
  const auto grid = make_grid(0.05, 0.95, 0.01);
  const auto a = sweep(kRef, r, grid);
  const auto b = sweep(kRef, r, grid);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].port_sr, b[i].port_sr);
    EXPECT_EQ(a[i].y, b[i].y);
  }
}

TEST(MakeGrid, InclusiveAndValidated) {
  const auto g = make_grid(0.05, 0.95, 0.01);
  EXPECT_EQ(g.size(), 91u);
  EXPECT_NEAR(g.back(), 0.95, 1e-12);
  EXPECT_EQ(make_grid(0.2, 0.2, 0.1).size(), 1u);
  EXPECT_THROW(make_grid(0.1, 0.2, 0.0), ValidationError);
  EXPECT_THROW(make_grid(0.3, 0.2, 0.1), ValidationError);
}

TEST(EfficiencyEstimate, FrontierRatio) {
  const auto r = ResponseModel::saturating(0.3, 0.002);
  // Smaller root of PortSR(y) = 0.6, found independently: y = 272.28586940874.
  const EfficiencyEstimate e = efficiency_estimate(kRef, r, 8000.0, 0.6);
  EXPECT_NEAR(e.frontier_y, 272.2858694087405, 1e-6);
  EXPECT_NEAR(e.frontier_cost, 4953.125478639042, 1e-6);
  EXPECT_NEAR(e.efficiency, 4953.125478639042 / 8000.0, 1e-10);
  EXPECT_NEAR(evaluate_point(kRef, r, e.frontier_y).port_sr, 0.6, 1e-12);

  EXPECT_NEAR(efficiency_estimate(kRef, r, e.frontier_cost, 0.6).efficiency, 1.0, 1e-12);
  EXPECT_NEAR(efficiency_estimate(kRef, r, 2.0 * e.frontier_cost, 0.6).efficiency, 0.5, 1e-12);
  // Cheaper than the frontier still clamps to 1.
  EXPECT_EQ(efficiency_estimate(kRef, r, 1000.0, 0.6).efficiency, 1.0);
}

TEST(EfficiencyEstimate, BelowBasePointUsesBaseCost) {
  const auto r = ResponseModel::saturating(0.3, 0.002);
  const EfficiencyEstimate e = efficiency_estimate(kRef, r, 5000.0, 0.4);
  EXPECT_EQ(e.frontier_y, 0.0);
  EXPECT_NEAR(e.frontier_cost, 2500.0, 1e-9);
  EXPECT_NEAR(e.efficiency, 0.5, 1e-12);
}

TEST(EfficiencyEstimate, Errors) {
  const auto r = ResponseModel::saturating(0.3, 0.002);
  EXPECT_THROW(efficiency_estimate(kRef, r, 5000.0, 0.7), UnreachableTargetError);
  EXPECT_THROW(efficiency_estimate(kRef, r, 0.0, 0.6), ValidationError);
  EXPECT_THROW(efficiency_estimate(kRef, r, 100.0, 0.0), ValidationError);
}
