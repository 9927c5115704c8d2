#pragma once

// Fund data model and the closed-form administration-cost algebra.
//
// Admin cost is the base share of the fund plus a discretionary cost y for
// each funded project, while the project count is whatever the fund can pay
// for after administration. Solving the two together gives
//
//   AR = (B * V_i + y) / (V_i + y),   NP = V_p * (1 - AR) / V_i.
//
// All money values are unit-agnostic; they only need to agree with each other.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fundadmin {

/// Funder-defined inputs for one fund.
struct FundSpec {
  double total_fund_value = 0.0;        ///< V_p, money per period
  double project_value = 0.0;           ///< V_i, money per project
  double base_cost_fraction = 0.0;      ///< B, non-discretionary share of V_p
  double intrinsic_success_rate = 0.0;  ///< PSR_in
  std::string money_unit = "kZAR";
};

/// Throws ValidationError unless every FundSpec invariant holds, including
/// that at least one project is fundable when y = 0.
void validate(const FundSpec& spec);

/// Conversion rate used for ZAR-denominated inputs (1 ZAR = 0.07 USD).
inline constexpr double kUsdPerZar = 0.07;

/// Rescales money fields by `usd_per_unit` and relabels the unit as USD.
FundSpec convert_to_usd(const FundSpec& spec, double usd_per_unit = kUsdPerZar);

struct AdminTask {
  std::string name;
  double cost_per_project = 0.0;
};

/// Base fraction plus the menu of optional per-project tasks.
struct CostSchedule {
  double base_fraction = 0.05;
  std::vector<AdminTask> discretionary_tasks;
};

/// Typical agency tasks with indicative costs in kZAR per project.
CostSchedule default_cost_schedule();

void validate(const CostSchedule& schedule);

/// Sum of the named tasks' costs. Unknown names throw LookupError.
double discretionary_cost(const CostSchedule& schedule, const std::vector<std::string>& selected);

/// Cost of performing every discretionary task.
double max_discretionary_cost(const CostSchedule& schedule);

/// Intrinsic success rate by (technology domain, RDI focus).
class DomainMatrix {
public:
  DomainMatrix() = default;

  /// Inserts or replaces an entry. Values outside [0, 1] throw ValidationError.
  void set(std::string domain, std::string rdi_focus, double psr_in);

  bool contains(std::string_view domain, std::string_view rdi_focus) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  const std::map<std::pair<std::string, std::string>, double>& entries() const { return entries_; }

private:
  std::map<std::pair<std::string, std::string>, double> entries_;
};

/// The only recoverable published entry: biotechnology / experimental development = 0.54.
DomainMatrix default_domain_matrix();

/// Exact stored value. Throws LookupError naming the pair when absent.
double psr_lookup(const DomainMatrix& matrix, std::string_view domain, std::string_view rdi_focus);

/// Administration ratio implied by a discretionary cost y per project.
double ar_from_y(const FundSpec& spec, double y);

/// Inverse of ar_from_y: y = V_i (AR - B) / (1 - AR).
/// Throws InfeasibleError for ar < B and ValidationError for ar >= 1.
double y_from_ar(const FundSpec& spec, double ar);

enum class ProjectCountMode { continuous, integer };

/// NP = V_p (1 - AR) / V_i for AR in [B, 1]. Integer mode floors.
double project_count(const FundSpec& spec, double ar, ProjectCountMode mode = ProjectCountMode::continuous);

/// Total administration cost B V_p + NP y at discretionary cost y.
double admin_cost(const FundSpec& spec, double y);

}  // namespace fundadmin
