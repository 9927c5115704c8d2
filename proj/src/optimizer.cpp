#include "fundadmin/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fundadmin/errors.hpp"
#include "fundadmin/golden.hpp"

namespace fundadmin {

RiskPreference RiskPreference::minimum_psr(double psr_min) {
  if (!(psr_min >= 0.0 && psr_min <= 1.0)) throw ValidationError("PSR_min must lie in [0, 1]");
  return {Mode::min_psr, psr_min};
}

const char* to_string(BoundaryFlag flag) {
  switch (flag) {
    case BoundaryFlag::interior:
      return "interior";
    case BoundaryFlag::at_base:
      return "at_base";
    case BoundaryFlag::at_cap:
      return "at_cap";
  }
  return "interior";
}

double search_upper_bound(const FundSpec& spec, const ResponseModel& response) {
  const double by_size = 10.0 * spec.project_value;
  if (response.kind() == ResponseKind::saturating) return std::max(10.0 / response.k(), by_size);
  return by_size;
}

namespace {

constexpr std::size_t kPrescanIntervals = 1000;

OptimumResult optimize_linear(const FundSpec& spec, const ResponseModel& response) {
  OptimumResult out;
  const double slope = response.c() * spec.project_value - spec.intrinsic_success_rate;
  // Past 1 - PSR_in the clamp on PSR makes extra spending useless.
  const double effective_cap = std::min(response.max_delta(), 1.0 - spec.intrinsic_success_rate);
  if (slope > 0.0 && effective_cap > 0.0 && response.c() > 0.0) {
    out.point = evaluate_point(spec, response, effective_cap / response.c());
    out.boundary = BoundaryFlag::at_cap;
  } else {
    out.point = evaluate_point(spec, response, 0.0);
    out.boundary = BoundaryFlag::at_base;
  }
  out.evaluations = 1;
  return out;
}

OptimumResult optimize_saturating(const FundSpec& spec, const ResponseModel& response) {
  const double y_max = search_upper_bound(spec, response);
  const auto port_sr = [&](double y) { return evaluate_point(spec, response, y).port_sr; };

  // Uniform pre-scan picks the cell holding the global maximum, which keeps
  // golden-section honest if the curve is not unimodal over the whole range.
  const double h = y_max / static_cast<double>(kPrescanIntervals);
  std::size_t best = 0;
  double best_value = port_sr(0.0);
  for (std::size_t i = 1; i <= kPrescanIntervals; ++i) {
    const double v = port_sr(i == kPrescanIntervals ? y_max : h * static_cast<double>(i));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = best == 0 ? 0.0 : h * static_cast<double>(best - 1);
  const double hi = best + 1 >= kPrescanIntervals ? y_max : h * static_cast<double>(best + 1);

  const ScalarOptimum refined = golden_section_maximize(port_sr, lo, hi, 1e-9);

  OptimumResult out;
  out.point = evaluate_point(spec, response, refined.x);
  out.evaluations = (kPrescanIntervals + 1) + refined.evaluations + 1;
  if (refined.x == 0.0) {
    out.boundary = BoundaryFlag::at_base;
  } else if (refined.x == y_max) {
    out.boundary = BoundaryFlag::at_cap;
  } else {
    out.boundary = BoundaryFlag::interior;
  }
  return out;
}

}  // namespace

OptimumResult optimize_ar(const FundSpec& spec, const ResponseModel& response) {
  validate(spec);
  OptimumResult out = response.kind() == ResponseKind::linear ? optimize_linear(spec, response)
                                                              : optimize_saturating(spec, response);
  out.exceeds_rarely_justifiable = out.point.ar > kRarelyJustifiableAr;
  return out;
}

PortfolioPoint required_ar_for_min_psr(const FundSpec& spec, const ResponseModel& response, double psr_min) {
  validate(spec);
  if (!(psr_min >= 0.0 && psr_min <= 1.0)) throw ValidationError("PSR_min must lie in [0, 1]");
  if (psr_min <= spec.intrinsic_success_rate) return evaluate_point(spec, response, 0.0);

  double y = invert_delta(response, psr_min - spec.intrinsic_success_rate);
  PortfolioPoint p = evaluate_point(spec, response, y);
  // The closed-form inverse can land an ulp short of the target.
  for (int i = 0; i < 64 && p.psr < psr_min; ++i) {
    y = std::nextafter(y, std::numeric_limits<double>::infinity());
    p = evaluate_point(spec, response, y);
  }
  if (p.psr < psr_min) {
    std::ostringstream msg;
    msg << "PSR_min " << psr_min << " cannot be met under the response";
    throw UnreachableTargetError(msg.str());
  }
  return p;
}

OptimumResult solve(const FundSpec& spec, const ResponseModel& response, const RiskPreference& preference) {
  if (preference.mode == RiskPreference::Mode::maximize_portsr) return optimize_ar(spec, response);
  OptimumResult out;
  out.point = required_ar_for_min_psr(spec, response, preference.psr_min);
  out.boundary = out.point.y == 0.0 ? BoundaryFlag::at_base : BoundaryFlag::interior;
  out.evaluations = 1;
  out.exceeds_rarely_justifiable = out.point.ar > kRarelyJustifiableAr;
  return out;
}

std::vector<PortfolioPoint> sweep(const FundSpec& spec, const ResponseModel& response, std::span<const double> ar_grid,
                                  ProjectCountMode mode) {
  validate(spec);
  for (double ar : ar_grid) {
    if (!(ar >= spec.base_cost_fraction && ar < 1.0)) {
      std::ostringstream msg;
      msg << "sweep value AR=" << ar << " lies outside [B=" << spec.base_cost_fraction << ", 1)";
      throw ValidationError(msg.str());
    }
  }
  std::vector<PortfolioPoint> out;
  out.reserve(ar_grid.size());
  for (double ar : ar_grid) out.push_back(evaluate_at_ar(spec, response, ar, mode));
  return out;
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw ValidationError("grid bounds must be finite");
  }
  if (!(step > 0.0)) throw ValidationError("grid step must be > 0");
  if (start > stop) throw ValidationError("grid start must not exceed stop");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid.push_back(start + step * static_cast<double>(i));
  return grid;
}

EfficiencyEstimate efficiency_estimate(const FundSpec& spec, const ResponseModel& response, double observed_admin_cost,
                                       double observed_port_sr) {
  validate(spec);
  if (!(observed_admin_cost > 0.0) || !std::isfinite(observed_admin_cost)) {
    throw ValidationError("observed admin cost must be > 0");
  }
  if (!(observed_port_sr > 0.0 && observed_port_sr <= 1.0)) {
    throw ValidationError("observed PortSR must lie in (0, 1]");
  }

  const OptimumResult best = optimize_ar(spec, response);
  if (observed_port_sr > best.point.port_sr) {
    std::ostringstream msg;
    msg << "observed PortSR " << observed_port_sr << " exceeds the model maximum " << best.point.port_sr;
    throw UnreachableTargetError(msg.str());
  }

  const auto port_sr = [&](double y) { return evaluate_point(spec, response, y).port_sr; };
  double frontier_y = 0.0;
  if (port_sr(0.0) < observed_port_sr) {
    // PortSR rises on [0, y_opt]; bisect for the first y that reaches the target.
    double lo = 0.0;
    double hi = best.point.y;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
      const double mid = 0.5 * (lo + hi);
      (port_sr(mid) >= observed_port_sr ? hi : lo) = mid;
    }
    frontier_y = hi;
  }

  EfficiencyEstimate out;
  out.frontier_y = frontier_y;
  out.frontier_cost = admin_cost(spec, frontier_y);
  if (out.frontier_cost <= 0.0) {
    throw ValidationError("frontier admin cost is zero (B = 0 at the base point); efficiency is undefined");
  }
  out.efficiency = std::min(1.0, out.frontier_cost / observed_admin_cost);
  return out;
}

}  // namespace fundadmin
