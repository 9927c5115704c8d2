#include "fundadmin/response.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "fundadmin/errors.hpp"
#include "fundadmin/golden.hpp"

namespace fundadmin {

const char* to_string(ResponseKind kind) {
  return kind == ResponseKind::linear ? "linear" : "saturating";
}

ResponseKind parse_response_kind(std::string_view text) {
  if (text == "linear") return ResponseKind::linear;
  if (text == "saturating") return ResponseKind::saturating;
  throw ValidationError("response kind must be 'linear' or 'saturating', got '" + std::string(text) + "'");
}

ResponseModel ResponseModel::linear(double slope, double max_delta) {
  if (!std::isfinite(slope) || slope < 0.0) throw ValidationError("linear slope C must be finite and >= 0");
  if (!(max_delta >= 0.0 && max_delta <= 1.0)) throw ValidationError("linear cap maxDeltaPSR must lie in [0, 1]");
  return ResponseModel(ResponseKind::linear, slope, 0.0, max_delta);
}

ResponseModel ResponseModel::saturating(double ceiling, double rate) {
  if (!(ceiling >= 0.0 && ceiling <= 1.0)) throw ValidationError("saturating ceiling C must lie in [0, 1]");
  if (!std::isfinite(rate) || rate <= 0.0) throw ValidationError("saturating rate k must be finite and > 0");
  return ResponseModel(ResponseKind::saturating, ceiling, rate, ceiling);
}

ResponseModel ResponseModel::rescale_money(double usd_per_unit) const {
  if (!(usd_per_unit > 0.0)) throw ValidationError("conversion rate must be > 0");
  if (kind_ == ResponseKind::linear) return linear(c_ / usd_per_unit, max_delta_);
  return saturating(c_, k_ / usd_per_unit);
}

double delta_psr(const ResponseModel& model, double y) {
  if (!(y >= 0.0)) throw ValidationError("discretionary cost y must be >= 0");
  if (model.kind() == ResponseKind::linear) {
    if (model.c() == 0.0) return 0.0;
    return std::min(model.c() * y, model.max_delta());
  }
  return -model.c() * std::expm1(-model.k() * y);
}

double invert_delta(const ResponseModel& model, double target_delta) {
  if (!(target_delta >= 0.0)) throw ValidationError("target uplift must be >= 0");
  if (target_delta == 0.0) return 0.0;
  std::ostringstream msg;
  if (model.kind() == ResponseKind::linear) {
    if (target_delta > model.max_delta() || model.c() == 0.0) {
      msg << "uplift " << target_delta << " exceeds the linear cap " << (model.c() == 0.0 ? 0.0 : model.max_delta());
      throw UnreachableTargetError(msg.str());
    }
    return target_delta / model.c();
  }
  if (target_delta >= model.c()) {
    msg << "uplift " << target_delta << " is not below the saturating ceiling " << model.c();
    throw UnreachableTargetError(msg.str());
  }
  return -std::log1p(-target_delta / model.c()) / model.k();
}

namespace {

void validate_samples(std::span<const CalibrationSample> samples) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!(s.y >= 0.0) || !std::isfinite(s.y)) {
      throw ValidationError("calibration sample " + std::to_string(i) + " has y < 0 or non-finite");
    }
    if (!(s.delta_psr >= 0.0 && s.delta_psr <= 1.0)) {
      throw ValidationError("calibration sample " + std::to_string(i) + " has uplift outside [0, 1]");
    }
  }
}

// Best ceiling for a fixed rate, and the residual sum of squares it leaves.
struct ProfiledFit {
  double ceiling;
  double ssr;
};

ProfiledFit profile_ceiling(std::span<const CalibrationSample> samples, double rate) {
  double sgd = 0.0;
  double sgg = 0.0;
  for (const auto& s : samples) {
    const double g = -std::expm1(-rate * s.y);
    sgd += g * s.delta_psr;
    sgg += g * g;
  }
  const double ceiling = sgg > 0.0 ? std::clamp(sgd / sgg, 0.0, 1.0) : 0.0;
  double ssr = 0.0;
  for (const auto& s : samples) {
    const double r = s.delta_psr + ceiling * std::expm1(-rate * s.y);
    ssr += r * r;
  }
  return {ceiling, ssr};
}

FitResult fit_linear(std::span<const CalibrationSample> samples, double cap) {
  if (samples.empty()) throw InsufficientDataError("linear fit needs at least one sample");
  double syd = 0.0;
  double syy = 0.0;
  for (const auto& s : samples) {
    syd += s.y * s.delta_psr;
    syy += s.y * s.y;
  }
  if (syy == 0.0) throw DegenerateDataError("linear fit needs at least one sample with y > 0");
  const double slope = std::max(0.0, syd / syy);
  const ResponseModel model = ResponseModel::linear(slope, cap);
  double ssr = 0.0;
  for (const auto& s : samples) {
    const double r = s.delta_psr - delta_psr(model, s.y);
    ssr += r * r;
  }
  return {model, ssr};
}

FitResult fit_saturating(std::span<const CalibrationSample> samples) {
  if (samples.size() < 2) throw InsufficientDataError("saturating fit needs at least two samples");
  std::set<double> distinct;
  for (const auto& s : samples) distinct.insert(s.y);
  if (distinct.size() < 2) throw DegenerateDataError("saturating fit needs at least two distinct y values");

  constexpr int kGrid = 200;
  const double log_lo = std::log(1e-6);
  const double log_hi = std::log(1.0);
  const double step = (log_hi - log_lo) / (kGrid - 1);

  int best = 0;
  double best_ssr = profile_ceiling(samples, std::exp(log_lo)).ssr;
  for (int i = 1; i < kGrid; ++i) {
    const double ssr = profile_ceiling(samples, std::exp(log_lo + i * step)).ssr;
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best = i;
    }
  }

  const double a = log_lo + std::max(best - 1, 0) * step;
  const double b = log_lo + std::min(best + 1, kGrid - 1) * step;
  const auto refined = golden_section_minimize(
      [&](double log_k) { return profile_ceiling(samples, std::exp(log_k)).ssr; }, a, b, 1e-15, 400);

  const double rate = std::exp(refined.x);
  const ProfiledFit fit = profile_ceiling(samples, rate);
  return {ResponseModel::saturating(fit.ceiling, rate), fit.ssr};
}

}  // namespace

FitResult fit_response(std::span<const CalibrationSample> samples, ResponseKind kind, double linear_cap) {
  validate_samples(samples);
  return kind == ResponseKind::linear ? fit_linear(samples, linear_cap) : fit_saturating(samples);
}

std::vector<CalibrationSample> samples_from_observations(const FundSpec& spec,
                                                         std::span<const PortfolioObservation> observations) {
  validate(spec);
  std::vector<CalibrationSample> out;
  out.reserve(observations.size());
  for (const auto& obs : observations) {
    const double y = y_from_ar(spec, obs.ar);
    const double psr = obs.port_sr / (1.0 - obs.ar);
    out.push_back({y, psr - spec.intrinsic_success_rate});
  }
  return out;
}

}  // namespace fundadmin
