#pragma once

// Response of the project success rate to discretionary spending y:
//
//   linear:      f(y) = min(C * y, maxDeltaPSR)
//   saturating:  f(y) = C * (1 - exp(-k * y)),   C = maxDeltaPSR

#include <span>
#include <vector>

#include "fundadmin/fund.hpp"

namespace fundadmin {

enum class ResponseKind { linear, saturating };

const char* to_string(ResponseKind kind);

/// Parses "linear" or "saturating"; anything else throws ValidationError.
ResponseKind parse_response_kind(std::string_view text);

class ResponseModel {
public:
  /// slope C per money unit, uplift capped at max_delta.
  static ResponseModel linear(double slope, double max_delta);
  /// ceiling C (the maximum uplift) approached at rate k per money unit.
  static ResponseModel saturating(double ceiling, double rate);

  ResponseKind kind() const { return kind_; }
  /// Slope (linear) or ceiling (saturating).
  double c() const { return c_; }
  /// Rate k; zero for the linear kind.
  double k() const { return k_; }
  /// Largest uplift the model can produce (reached only asymptotically when saturating).
  double max_delta() const { return max_delta_; }

  /// Same response with money measured in a unit `usd_per_unit` times larger.
  ResponseModel rescale_money(double usd_per_unit) const;

  friend bool operator==(const ResponseModel&, const ResponseModel&) = default;

private:
  ResponseModel(ResponseKind kind, double c, double k, double max_delta)
      : kind_(kind), c_(c), k_(k), max_delta_(max_delta) {}

  ResponseKind kind_;
  double c_;
  double k_;
  double max_delta_;
};

/// ΔPSR purchased by spending y per project. Throws ValidationError for y < 0.
double delta_psr(const ResponseModel& model, double y);

/// Smallest y achieving the target uplift. Throws UnreachableTargetError when
/// the target exceeds the linear cap or is at or above the saturating ceiling.
double invert_delta(const ResponseModel& model, double target_delta);

struct CalibrationSample {
  double y = 0.0;
  double delta_psr = 0.0;
};

struct FitResult {
  ResponseModel model;
  double sum_squared_residuals = 0.0;
};

/// Least-squares fit of the given response kind.
///
/// Linear fits go through the origin in closed form; the cap cannot be
/// identified from the data and is taken from `linear_cap`. Saturating fits
/// profile out C in closed form, scan k on a log grid over [1e-6, 1] and
/// refine with golden-section search on log k.
FitResult fit_response(std::span<const CalibrationSample> samples, ResponseKind kind, double linear_cap = 1.0);

/// Observed (AR, PortSR) for one period of a fund.
struct PortfolioObservation {
  double ar = 0.0;
  double port_sr = 0.0;
};

/// Converts (AR, PortSR) observations into (y, ΔPSR) samples using the
/// fund's base fraction, V_i and PSR_in.
std::vector<CalibrationSample> samples_from_observations(const FundSpec& spec,
                                                         std::span<const PortfolioObservation> observations);

}  // namespace fundadmin
