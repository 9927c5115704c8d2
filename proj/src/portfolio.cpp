#include "fundadmin/portfolio.hpp"

#include <algorithm>
#include <cmath>

#include "fundadmin/errors.hpp"

namespace fundadmin {

PortfolioPoint evaluate_point(const FundSpec& spec, const ResponseModel& response, double y, ProjectCountMode mode) {
  PortfolioPoint p;
  p.y = y;
  p.ar = ar_from_y(spec, y);
  p.psr = std::clamp(spec.intrinsic_success_rate + delta_psr(response, y), 0.0, 1.0);
  const double max_projects = spec.total_fund_value / spec.project_value;
  p.np = project_count(spec, p.ar, mode);
  if (mode == ProjectCountMode::integer) p.ar = 1.0 - p.np * spec.project_value / spec.total_fund_value;
  p.nsp = p.np * p.psr;
  p.port_sr = p.nsp / max_projects;
  return p;
}

PortfolioPoint evaluate_at_ar(const FundSpec& spec, const ResponseModel& response, double ar, ProjectCountMode mode) {
  PortfolioPoint p = evaluate_point(spec, response, y_from_ar(spec, ar), mode);
  if (mode == ProjectCountMode::continuous) {
    // Keep the requested AR verbatim rather than its round trip through y.
    p.ar = ar;
    p.np = project_count(spec, ar);
    p.nsp = p.np * p.psr;
    p.port_sr = p.nsp / (spec.total_fund_value / spec.project_value);
  }
  return p;
}

}  // namespace fundadmin
