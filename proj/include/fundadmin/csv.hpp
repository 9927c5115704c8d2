#pragma once

// CSV and text I/O. Dialect: comma separator, no quoting, '\n' line endings.

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fundadmin/analytics.hpp"
#include "fundadmin/portfolio.hpp"
#include "fundadmin/response.hpp"

namespace fundadmin {

/// Fixed notation with `significant` significant digits, e.g. 0.173611,
/// 381.070, 0.00123457. Negative zero prints as zero.
std::string format_fixed(double value, int significant = 6);

inline constexpr std::string_view kAnnualHeader = "year,disbursed,admin_cost,projects,publications,masters,doctorates,patents";
inline constexpr std::string_view kSweepHeader = "ar,y,np,psr,nsp,port_sr";

/// Parses annual records; the optional ninth column is `deflator`.
/// Output is sorted by year. Duplicate years throw ValidationError.
std::vector<AnnualRecord> parse_annual_csv(std::string_view text);
std::vector<AnnualRecord> read_annual_csv(const std::filesystem::path& path);

/// Calibration input: either `y,delta_psr` or `ar,port_sr` columns.
struct CalibrationData {
  std::vector<CalibrationSample> samples;
  std::vector<PortfolioObservation> observations;
  bool from_observations = false;
};

CalibrationData parse_calibration_csv(std::string_view text);
CalibrationData read_calibration_csv(const std::filesystem::path& path);

/// `domain,rdi_focus,psr_in` rows.
DomainMatrix parse_domain_csv(std::string_view text);
DomainMatrix read_domain_csv(const std::filesystem::path& path);

std::string format_sweep_csv(std::span<const PortfolioPoint> points, int significant = 6);
/// Throws ValidationError on an empty list and IoError if the stream fails.
void write_sweep_csv(std::span<const PortfolioPoint> points, std::ostream& sink, int significant = 6);

std::string format_report_csv(std::span<const ReportRow> rows, int significant = 6);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`, so the
/// destination is either untouched or complete.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace fundadmin
