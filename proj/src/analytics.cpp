#include "fundadmin/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "fundadmin/errors.hpp"

namespace fundadmin {

namespace {

std::string year_tag(int year) { return "year " + std::to_string(year); }

bool non_negative(double v) { return v >= 0.0 && std::isfinite(v); }

const AnnualRecord& find_year(std::span<const AnnualRecord> series, int year) {
  const auto it = std::find_if(series.begin(), series.end(), [year](const AnnualRecord& r) { return r.year == year; });
  if (it == series.end()) throw ValidationError("base " + year_tag(year) + " is not in the series");
  return *it;
}

}  // namespace

void validate(const AnnualRecord& r) {
  if (!non_negative(r.disbursed) || !non_negative(r.admin_cost)) {
    throw ValidationError(year_tag(r.year) + ": money fields must be >= 0");
  }
  for (double count : {r.projects, r.publications, r.masters, r.doctorates, r.patents}) {
    if (!non_negative(count)) throw ValidationError(year_tag(r.year) + ": counts must be >= 0");
  }
  if (r.deflator && !(*r.deflator > 0.0 && std::isfinite(*r.deflator))) {
    throw ValidationError(year_tag(r.year) + ": deflator must be > 0");
  }
}

void validate(const OutputWeights& w) {
  for (double v : {w.publication, w.masters, w.doctorate, w.patent, w.base_publication_value}) {
    if (!non_negative(v)) throw ValidationError("output weights must be >= 0");
  }
}

void validate_series(std::span<const AnnualRecord> series) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    validate(series[i]);
    if (i > 0 && series[i].year <= series[i - 1].year) {
      throw ValidationError("years must be strictly increasing (" + year_tag(series[i].year) + ")");
    }
  }
}

double composite_output(const AnnualRecord& r, const OutputWeights& w) {
  return r.publications * w.publication + r.masters * w.masters + r.doctorates * w.doctorate + r.patents * w.patent;
}

double roi(const AnnualRecord& r, const OutputWeights& w) {
  validate(r);
  validate(w);
  const double expenditure = r.disbursed + r.admin_cost;
  if (expenditure <= 0.0) throw DegenerateDataError(year_tag(r.year) + ": total expenditure is zero");
  return composite_output(r, w) * w.base_publication_value / expenditure;
}

double incremental_admin_cost(std::span<const AnnualRecord> series) {
  if (series.size() < 2) throw DegenerateDataError("incremental admin cost needs at least two records");
  std::set<double> counts;
  for (const auto& r : series) {
    validate(r);
    counts.insert(r.projects);
  }
  if (counts.size() < 2) throw DegenerateDataError("incremental admin cost needs distinct project counts");

  const auto n = static_cast<double>(series.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& r : series) {
    mean_x += r.projects;
    mean_y += r.admin_cost;
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& r : series) {
    const double dx = r.projects - mean_x;
    sxy += dx * (r.admin_cost - mean_y);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::vector<AnnualRecord> deflate_series(std::span<const AnnualRecord> series, int base_year) {
  validate_series(series);
  for (const auto& r : series) {
    if (!r.deflator) throw ValidationError(year_tag(r.year) + " has no deflator");
  }
  const double base = *find_year(series, base_year).deflator;

  std::vector<AnnualRecord> out(series.begin(), series.end());
  for (auto& r : out) {
    if (r.year == base_year) continue;
    const double ratio = *r.deflator / base;
    r.disbursed /= ratio;
    r.admin_cost /= ratio;
  }
  return out;
}

std::vector<ReportRow> case_study_report(std::span<const AnnualRecord> series, const OutputWeights& weights,
                                         int base_year) {
  validate_series(series);
  validate(weights);
  find_year(series, base_year);

  std::vector<ReportRow> rows;
  rows.reserve(series.size());
  for (const auto& r : series) {
    if (r.projects <= 0.0) throw ValidationError(year_tag(r.year) + " has zero projects");
    ReportRow row;
    row.year = r.year;
    row.projects = r.projects;
    row.funding_per_project = r.disbursed / r.projects;
    const double total = r.admin_cost + r.disbursed;
    if (total <= 0.0) throw ValidationError(year_tag(r.year) + " has zero total expenditure");
    row.admin_ratio = r.admin_cost / total;
    row.composite = composite_output(r, weights);
    row.roi = roi(r, weights);
    rows.push_back(row);
  }

  const ReportRow base = *std::find_if(rows.begin(), rows.end(), [&](const ReportRow& r) { return r.year == base_year; });
  // A zero base value leaves its index undefined; report NaN rather than guess.
  const auto index = [](double value, double base_value) {
    return base_value != 0.0 ? value / base_value : std::numeric_limits<double>::quiet_NaN();
  };
  for (auto& row : rows) {
    row.projects_index = index(row.projects, base.projects);
    row.funding_per_project_index = index(row.funding_per_project, base.funding_per_project);
    row.admin_ratio_index = index(row.admin_ratio, base.admin_ratio);
    row.composite_index = index(row.composite, base.composite);
    row.roi_index = index(row.roi, base.roi);
  }
  return rows;
}

}  // namespace fundadmin
