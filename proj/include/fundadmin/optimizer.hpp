#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fundadmin/portfolio.hpp"

namespace fundadmin {

/// Either maximise the portfolio success rate, or buy just enough
/// administration to guarantee a minimum project success rate.
struct RiskPreference {
  enum class Mode { maximize_portsr, min_psr };

  Mode mode = Mode::maximize_portsr;
  double psr_min = 0.0;

  static RiskPreference maximize() { return {}; }
  static RiskPreference minimum_psr(double psr_min);
};

enum class BoundaryFlag { interior, at_base, at_cap };

const char* to_string(BoundaryFlag flag);

/// Administration ratios above this are flagged as rarely justifiable.
inline constexpr double kRarelyJustifiableAr = 0.20;

struct OptimumResult {
  PortfolioPoint point;
  BoundaryFlag boundary = BoundaryFlag::interior;
  std::size_t evaluations = 0;
  bool exceeds_rarely_justifiable = false;
};

/// Upper end of the y search interval: max(10 / k, 10 V_i).
double search_upper_bound(const FundSpec& spec, const ResponseModel& response);

/// Administration ratio that maximises PortSR.
///
/// The linear response has PortSR affine in AR with slope C V_i - PSR_in up
/// to the uplift cap, so the answer is a closed-form corner. The saturating
/// response is searched in y: a uniform pre-scan locates the best cell, then
/// golden-section search refines inside it.
OptimumResult optimize_ar(const FundSpec& spec, const ResponseModel& response);

/// Cheapest point whose PSR reaches psr_min.
PortfolioPoint required_ar_for_min_psr(const FundSpec& spec, const ResponseModel& response, double psr_min);

/// Dispatches on the preference. The min-PSR route reports at_base when no
/// discretionary spending is needed and interior otherwise.
OptimumResult solve(const FundSpec& spec, const ResponseModel& response, const RiskPreference& preference);

/// Evaluates each administration ratio in grid order.
std::vector<PortfolioPoint> sweep(const FundSpec& spec, const ResponseModel& response, std::span<const double> ar_grid,
                                  ProjectCountMode mode = ProjectCountMode::continuous);

/// Inclusive grid start, start + step, ... up to stop (with a 1e-9 step slack).
std::vector<double> make_grid(double start, double stop, double step);

struct EfficiencyEstimate {
  double efficiency = 0.0;     ///< E_T in (0, 1]
  double frontier_y = 0.0;     ///< cheapest y reaching the observed PortSR
  double frontier_cost = 0.0;  ///< admin cost at frontier_y
};

/// Organisational efficiency: frontier admin cost for the observed PortSR
/// divided by the observed admin cost, clamped to (0, 1].
EfficiencyEstimate efficiency_estimate(const FundSpec& spec, const ResponseModel& response, double observed_admin_cost,
                                       double observed_port_sr);

}  // namespace fundadmin
