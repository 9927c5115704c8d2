#include "fundadmin/fund.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fundadmin/errors.hpp"

namespace fundadmin {

namespace {

bool finite_all(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

void validate(const FundSpec& spec) {
  const double vp = spec.total_fund_value;
  const double vi = spec.project_value;
  const double b = spec.base_cost_fraction;
  const double psr = spec.intrinsic_success_rate;
  if (!finite_all({vp, vi, b, psr})) throw ValidationError("fund spec contains a non-finite value");
  if (vp <= 0.0) throw ValidationError("total fund value V_p must be > 0");
  if (vi <= 0.0) throw ValidationError("project value V_i must be > 0");
  if (b < 0.0 || b >= 1.0) throw ValidationError("base cost fraction B must lie in [0, 1)");
  if (psr < 0.0 || psr > 1.0) throw ValidationError("intrinsic success rate must lie in [0, 1]");
  if (vi > vp * (1.0 - b)) {
    std::ostringstream msg;
    msg << "project value V_i=" << vi << " exceeds the fundable amount V_p*(1-B)=" << vp * (1.0 - b);
    throw ValidationError(msg.str());
  }
}

FundSpec convert_to_usd(const FundSpec& spec, double usd_per_unit) {
  if (!(usd_per_unit > 0.0)) throw ValidationError("conversion rate must be > 0");
  FundSpec out = spec;
  out.total_fund_value *= usd_per_unit;
  out.project_value *= usd_per_unit;
  out.money_unit = "USD";
  return out;
}

CostSchedule default_cost_schedule() {
  return CostSchedule{0.05,
                      {{"internal_ex_ante", 50.0},
                       {"external_ex_ante", 400.0},
                       {"lifecycle_monitoring", 300.0},
                       {"internal_ex_post", 150.0},
                       {"external_ex_post", 600.0},
                       {"awardee_training", 200.0}}};
}

void validate(const CostSchedule& schedule) {
  if (!(schedule.base_fraction >= 0.0 && schedule.base_fraction < 1.0)) {
    throw ValidationError("schedule base fraction must lie in [0, 1)");
  }
  for (const auto& task : schedule.discretionary_tasks) {
    if (!(task.cost_per_project >= 0.0) || !std::isfinite(task.cost_per_project)) {
      throw ValidationError("task '" + task.name + "' has a negative or non-finite cost");
    }
  }
}

double discretionary_cost(const CostSchedule& schedule, const std::vector<std::string>& selected) {
  validate(schedule);
  double total = 0.0;
  for (const auto& name : selected) {
    bool found = false;
    for (const auto& task : schedule.discretionary_tasks) {
      if (task.name == name) {
        total += task.cost_per_project;
        found = true;
        break;
      }
    }
    if (!found) throw LookupError("unknown administration task '" + name + "'");
  }
  return total;
}

double max_discretionary_cost(const CostSchedule& schedule) {
  validate(schedule);
  return std::accumulate(schedule.discretionary_tasks.begin(), schedule.discretionary_tasks.end(), 0.0,
                         [](double acc, const AdminTask& t) { return acc + t.cost_per_project; });
}

void DomainMatrix::set(std::string domain, std::string rdi_focus, double psr_in) {
  if (!(psr_in >= 0.0 && psr_in <= 1.0)) {
    throw ValidationError("PSR_in for (" + domain + ", " + rdi_focus + ") must lie in [0, 1]");
  }
  entries_[{std::move(domain), std::move(rdi_focus)}] = psr_in;
}

bool DomainMatrix::contains(std::string_view domain, std::string_view rdi_focus) const {
  return entries_.find({std::string(domain), std::string(rdi_focus)}) != entries_.end();
}

DomainMatrix default_domain_matrix() {
  DomainMatrix m;
  m.set("biotechnology", "experimental development", 0.54);
  return m;
}

double psr_lookup(const DomainMatrix& matrix, std::string_view domain, std::string_view rdi_focus) {
  if (matrix.empty()) throw LookupError("domain matrix is empty");
  const auto it = matrix.entries().find({std::string(domain), std::string(rdi_focus)});
  if (it == matrix.entries().end()) {
    throw LookupError("no intrinsic success rate for (" + std::string(domain) + ", " + std::string(rdi_focus) + ")");
  }
  return it->second;
}

double ar_from_y(const FundSpec& spec, double y) {
  validate(spec);
  if (!(y >= 0.0)) throw ValidationError("discretionary cost y must be >= 0");
  if (std::isinf(y)) return 1.0;
  const double vi = spec.project_value;
  // Rounding can land an ulp below B for tiny y.
  return std::clamp((spec.base_cost_fraction * vi + y) / (vi + y), spec.base_cost_fraction, 1.0);
}

double y_from_ar(const FundSpec& spec, double ar) {
  validate(spec);
  if (std::isnan(ar)) throw ValidationError("administration ratio is NaN");
  if (ar >= 1.0) throw ValidationError("administration ratio must be < 1");
  if (ar < spec.base_cost_fraction) {
    std::ostringstream msg;
    msg << "administration ratio " << ar << " is below the base fraction " << spec.base_cost_fraction;
    throw InfeasibleError(msg.str());
  }
  return spec.project_value * (ar - spec.base_cost_fraction) / (1.0 - ar);
}

double project_count(const FundSpec& spec, double ar, ProjectCountMode mode) {
  validate(spec);
  if (!(ar >= spec.base_cost_fraction && ar <= 1.0)) {
    throw ValidationError("administration ratio must lie in [B, 1] for a project count");
  }
  const double np = spec.total_fund_value * (1.0 - ar) / spec.project_value;
  return mode == ProjectCountMode::integer ? std::floor(np) : np;
}

double admin_cost(const FundSpec& spec, double y) {
  return ar_from_y(spec, y) * spec.total_fund_value;
}

}  // namespace fundadmin
