#pragma once

#include "fundadmin/fund.hpp"
#include "fundadmin/response.hpp"

namespace fundadmin {

/// One evaluated operating point of a fund.
struct PortfolioPoint {
  double y = 0.0;        ///< discretionary cost per project
  double ar = 0.0;       ///< administration ratio
  double np = 0.0;       ///< funded projects
  double psr = 0.0;      ///< project success rate, clamped to [0, 1]
  double nsp = 0.0;      ///< expected successful projects
  double port_sr = 0.0;  ///< NSP normalised by V_p / V_i
};

/// Evaluates the fund at discretionary cost y.
///
/// In integer mode NP is floored and AR is recomputed from the funds left
/// over, so NP V_i + AR V_p = V_p still holds.
PortfolioPoint evaluate_point(const FundSpec& spec, const ResponseModel& response, double y,
                              ProjectCountMode mode = ProjectCountMode::continuous);

/// Same as evaluate_point, starting from an administration ratio.
PortfolioPoint evaluate_at_ar(const FundSpec& spec, const ResponseModel& response, double ar,
                              ProjectCountMode mode = ProjectCountMode::continuous);

}  // namespace fundadmin
