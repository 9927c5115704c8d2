#pragma once

// Flat `key = value` run configuration.
//
//   # comment
//   v_p = 50000
//   response.kind = saturating
//
// Keys are case-sensitive and unknown keys are rejected. Command-line flags
// are overlaid on the parsed entries before validation, so the precedence is
// flag > config file > built-in default.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fundadmin/analytics.hpp"
#include "fundadmin/optimizer.hpp"
#include "fundadmin/response.hpp"

namespace fundadmin {

struct ConfigEntry {
  std::string value;
  int line = 0;  ///< 0 when the value came from a command-line flag
};

using ConfigEntries = std::map<std::string, ConfigEntry>;

/// Every key the configuration understands.
const std::vector<std::string_view>& known_config_keys();

/// Syntax pass only. Throws ParseError with the line number on malformed
/// lines or repeated keys.
ConfigEntries parse_config_entries(std::string_view text);

struct RunConfig {
  std::optional<double> total_fund_value;
  std::optional<double> project_value;
  double base_cost_fraction = 0.05;
  std::optional<double> intrinsic_success_rate;
  std::optional<std::string> domain;
  std::optional<std::string> rdi_focus;
  std::optional<std::string> domain_matrix_path;
  std::string money_unit = "kZAR";
  bool zar_to_usd = false;

  std::optional<ResponseKind> response_kind;
  std::optional<double> response_c;
  std::optional<double> response_k;
  double response_max_delta = 1.0;

  RiskPreference risk;
  bool psr_min_given = false;  ///< risk.psr_min was set explicitly

  std::optional<double> sweep_start;  ///< defaults to B
  double sweep_stop = 0.95;
  double sweep_step = 0.01;

  std::optional<double> y;
  std::vector<std::string> tasks;
  bool integer_projects = false;

  std::optional<double> observed_admin_cost;
  std::optional<double> observed_port_sr;

  OutputWeights weights;
  std::optional<std::string> data_path;
  std::optional<int> base_year;
  std::optional<std::string> output_path;
  int precision = 6;
};

/// Type and constraint checks. Type mismatches throw ParseError; unknown
/// keys and constraint violations throw ValidationError.
RunConfig build_run_config(const ConfigEntries& entries);

/// parse_config_entries followed by build_run_config.
RunConfig parse_config(std::string_view text);

/// Fund spec from explicit fields, resolving PSR_in through `matrix` when
/// only domain and RDI focus are given.
FundSpec fund_spec_from(const RunConfig& config, const DomainMatrix& matrix);

/// Response from response.kind and its parameters.
ResponseModel response_from(const RunConfig& config);

}  // namespace fundadmin
