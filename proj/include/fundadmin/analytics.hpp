#pragma once

// Case-study analytics over a fund's annual history: weighted output metric,
// return on investment, marginal admin cost per project and real-terms
// deflation with base-year indices.

#include <optional>
#include <span>
#include <vector>

namespace fundadmin {

struct AnnualRecord {
  int year = 0;
  double disbursed = 0.0;
  double admin_cost = 0.0;
  double projects = 0.0;
  double publications = 0.0;
  double masters = 0.0;
  double doctorates = 0.0;
  double patents = 0.0;
  std::optional<double> deflator;  ///< price index, any base
};

/// Relative output values, in publication-equivalents, and the money value
/// of one publication.
struct OutputWeights {
  double publication = 1.0;
  double masters = 2.0;
  double doctorate = 5.0;
  double patent = 30.0;
  double base_publication_value = 12000.0;
};

void validate(const AnnualRecord& record);
void validate(const OutputWeights& weights);
/// Record-level checks plus strictly increasing years.
void validate_series(std::span<const AnnualRecord> series);

double composite_output(const AnnualRecord& record, const OutputWeights& weights = {});

/// Output value (composite times the publication value) over total spend.
/// Throws DegenerateDataError when disbursed + admin_cost is zero.
double roi(const AnnualRecord& record, const OutputWeights& weights = {});

/// OLS slope of admin cost against project count, intercept fitted.
double incremental_admin_cost(std::span<const AnnualRecord> series);

/// Money fields divided by deflator(year) / deflator(base_year).
std::vector<AnnualRecord> deflate_series(std::span<const AnnualRecord> series, int base_year);

struct ReportRow {
  int year = 0;
  double projects = 0.0;
  double funding_per_project = 0.0;
  double admin_ratio = 0.0;
  double composite = 0.0;
  double roi = 0.0;
  double projects_index = 1.0;
  double funding_per_project_index = 1.0;
  double admin_ratio_index = 1.0;
  double composite_index = 1.0;
  double roi_index = 1.0;
};

/// One row per year, with each metric also indexed to 1.0 at base_year.
/// Expects an already deflated (or consistently nominal) series.
std::vector<ReportRow> case_study_report(std::span<const AnnualRecord> series, const OutputWeights& weights,
                                         int base_year);

}  // namespace fundadmin
