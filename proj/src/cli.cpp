#include "fundadmin/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "fundadmin/config.hpp"
#include "fundadmin/csv.hpp"
#include "fundadmin/errors.hpp"

namespace fundadmin {

namespace {

struct FlagBinding {
  const char* flag;
  const char* key;
  const char* help;
};

// Flags that override config keys of the same meaning.
constexpr FlagBinding kModelFlags[] = {
    {"--v-p", "v_p", "total fund value"},
    {"--v-i", "v_i", "average project value"},
    {"--b", "b", "base cost fraction"},
    {"--psr-in", "psr_in", "intrinsic project success rate"},
    {"--domain", "domain", "technology domain (with --rdi-focus, looks up psr_in)"},
    {"--rdi-focus", "rdi_focus", "RDI focus"},
    {"--domain-matrix", "domain_matrix", "CSV of domain,rdi_focus,psr_in"},
    {"--money-unit", "money_unit", "label for money values"},
    {"--zar-to-usd", "zar_to_usd", "true to convert ZAR inputs to USD at 0.07"},
    {"--kind", "response.kind", "linear or saturating"},
    {"--c", "response.c", "response slope (linear) or ceiling (saturating)"},
    {"--k", "response.k", "saturating rate"},
    {"--max-delta", "response.max_delta", "linear uplift cap"},
    {"--psr-min", "risk.psr_min", "minimum acceptable PSR"},
    {"--start", "sweep.start", "first AR of the sweep"},
    {"--stop", "sweep.stop", "last AR of the sweep"},
    {"--step", "sweep.step", "AR step of the sweep"},
    {"--y", "y", "discretionary cost per project"},
    {"--tasks", "tasks", "comma-separated administration tasks"},
    {"--integer-projects", "integer_projects", "true to floor the project count"},
    {"--observed-admin-cost", "observed.admin_cost", "observed admin cost for the efficiency estimate"},
    {"--observed-port-sr", "observed.port_sr", "observed PortSR for the efficiency estimate"},
    {"--data", "data", "input CSV"},
    {"--base-year", "base_year", "base year for indices and deflation"},
    {"--out", "output", "write results to this file instead of stdout"},
    {"--precision", "precision", "significant digits (1-17)"},
};

struct Invocation {
  std::optional<std::string> config_path;
  std::map<std::string, std::string> flag_values;
  bool summary = false;
};

void add_flags(CLI::App& cmd, Invocation& inv) {
  cmd.add_option("--config", inv.config_path, "key = value configuration file");
  for (const auto& f : kModelFlags) {
    cmd.add_option_function<std::string>(
        f.flag, [&inv, key = f.key](const std::string& v) { inv.flag_values[key] = v; }, f.help);
  }
}

RunConfig load_config(const Invocation& inv) {
  ConfigEntries entries;
  if (inv.config_path) entries = parse_config_entries(read_text_file(*inv.config_path));
  for (const auto& [key, value] : inv.flag_values) entries[key] = ConfigEntry{value, 0};
  return build_run_config(entries);
}

// Money inputs resolved into the unit the model works in.
struct Model {
  FundSpec spec;
  ResponseModel response;
  double money_scale = 1.0;
};

DomainMatrix domain_matrix(const RunConfig& c) {
  return c.domain_matrix_path ? read_domain_csv(*c.domain_matrix_path) : default_domain_matrix();
}

FundSpec resolve_spec(const RunConfig& c) {
  FundSpec spec = fund_spec_from(c, domain_matrix(c));
  return c.zar_to_usd ? convert_to_usd(spec) : spec;
}

Model resolve_model(const RunConfig& c) {
  const double scale = c.zar_to_usd ? kUsdPerZar : 1.0;
  ResponseModel response = response_from(c);
  if (c.zar_to_usd) response = response.rescale_money(scale);
  return {resolve_spec(c), response, scale};
}

ProjectCountMode count_mode(const RunConfig& c) {
  return c.integer_projects ? ProjectCountMode::integer : ProjectCountMode::continuous;
}

class ScalarWriter {
public:
  explicit ScalarWriter(int precision) : precision_(precision) {}
  void add(const std::string& key, double value) { text_ += key + " = " + format_fixed(value, precision_) + "\n"; }
  void add(const std::string& key, const std::string& value) { text_ += key + " = " + value + "\n"; }
  void add_point(const PortfolioPoint& p) {
    add("y", p.y);
    add("ar", p.ar);
    add("np", p.np);
    add("psr", p.psr);
    add("nsp", p.nsp);
    add("port_sr", p.port_sr);
  }
  const std::string& text() const { return text_; }

private:
  int precision_;
  std::string text_;
};

std::string cmd_evaluate(const RunConfig& c) {
  const Model m = resolve_model(c);
  double y = 0.0;
  if (c.y) {
    y = *c.y;
  } else if (!c.tasks.empty()) {
    y = discretionary_cost(default_cost_schedule(), c.tasks);
  } else {
    throw ValidationError("evaluate needs y or tasks");
  }
  y *= m.money_scale;
  ScalarWriter w(c.precision);
  w.add("money_unit", m.spec.money_unit);
  w.add_point(evaluate_point(m.spec, m.response, y, count_mode(c)));
  if (c.observed_admin_cost && c.observed_port_sr) {
    const auto e = efficiency_estimate(m.spec, m.response, *c.observed_admin_cost * m.money_scale, *c.observed_port_sr);
    w.add("e_t", e.efficiency);
    w.add("frontier_y", e.frontier_y);
    w.add("frontier_admin_cost", e.frontier_cost);
  } else if (c.observed_admin_cost || c.observed_port_sr) {
    throw ValidationError("the efficiency estimate needs both observed.admin_cost and observed.port_sr");
  }
  return w.text();
}

std::string cmd_sweep(const RunConfig& c) {
  const Model m = resolve_model(c);
  const auto grid = make_grid(c.sweep_start.value_or(m.spec.base_cost_fraction), c.sweep_stop, c.sweep_step);
  return format_sweep_csv(sweep(m.spec, m.response, grid, count_mode(c)), c.precision);
}

std::string cmd_optimize(const RunConfig& c, std::ostream& err) {
  const Model m = resolve_model(c);
  const OptimumResult r = optimize_ar(m.spec, m.response);
  if (r.exceeds_rarely_justifiable) {
    err << "warning: optimum administration ratio " << format_fixed(r.point.ar, c.precision)
        << " is above 0.20, which is rarely justifiable in practice\n";
  }
  ScalarWriter w(c.precision);
  w.add("money_unit", m.spec.money_unit);
  w.add("ar_opt", r.point.ar);
  w.add("y_opt", r.point.y);
  w.add("np", r.point.np);
  w.add("psr", r.point.psr);
  w.add("nsp", r.point.nsp);
  w.add("port_sr_opt", r.point.port_sr);
  w.add("boundary", to_string(r.boundary));
  w.add("evaluations", std::to_string(r.evaluations));
  w.add("ar_above_0_20", r.exceeds_rarely_justifiable ? "true" : "false");
  return w.text();
}

std::string cmd_invert(const RunConfig& c) {
  if (!c.psr_min_given) throw ValidationError("invert needs --psr-min or risk.psr_min");
  const Model m = resolve_model(c);
  ScalarWriter w(c.precision);
  w.add("money_unit", m.spec.money_unit);
  w.add("psr_min", c.risk.psr_min);
  w.add_point(required_ar_for_min_psr(m.spec, m.response, c.risk.psr_min));
  return w.text();
}

std::string cmd_calibrate(const RunConfig& c) {
  if (!c.data_path) throw ValidationError("calibrate needs --data");
  if (!c.response_kind) throw ValidationError("missing required key response.kind");
  const CalibrationData data = read_calibration_csv(*c.data_path);
  std::vector<CalibrationSample> samples = data.samples;
  std::optional<FundSpec> spec;
  if (data.from_observations) {
    spec = resolve_spec(c);
    samples = samples_from_observations(*spec, data.observations);
  } else if (c.zar_to_usd) {
    for (auto& s : samples) s.y *= kUsdPerZar;
  }
  const FitResult fit = fit_response(samples, *c.response_kind, c.response_max_delta);
  ScalarWriter w(c.precision);
  w.add("kind", to_string(fit.model.kind()));
  w.add("samples", std::to_string(samples.size()));
  w.add("c", fit.model.c());
  if (fit.model.kind() == ResponseKind::saturating) {
    w.add("k", fit.model.k());
  } else {
    w.add("max_delta", fit.model.max_delta());
  }
  w.add("sse", fit.sum_squared_residuals);
  return w.text();
}

std::string cmd_case_study(const RunConfig& c, bool summary) {
  if (!c.data_path) throw ValidationError("case-study needs --data");
  if (!c.base_year) throw ValidationError("case-study needs --base-year");
  std::vector<AnnualRecord> series = read_annual_csv(*c.data_path);
  if (series.empty()) throw ValidationError("annual data contains no records");
  const auto with_deflator =
      std::count_if(series.begin(), series.end(), [](const AnnualRecord& r) { return r.deflator.has_value(); });
  if (with_deflator == static_cast<std::ptrdiff_t>(series.size())) {
    series = deflate_series(series, *c.base_year);
  } else if (with_deflator != 0) {
    throw ValidationError("deflator must be given for every year or for none");
  }
  const auto rows = case_study_report(series, c.weights, *c.base_year);
  if (!summary) return format_report_csv(rows, c.precision);

  ScalarWriter w(c.precision);
  const auto& first = rows.front();
  const auto& last = rows.back();
  w.add("first_year", std::to_string(first.year));
  w.add("last_year", std::to_string(last.year));
  w.add("base_year", std::to_string(*c.base_year));
  w.add("projects_change", last.projects / first.projects - 1.0);
  w.add("funding_per_project_change", last.funding_per_project / first.funding_per_project - 1.0);
  w.add("admin_ratio_change", last.admin_ratio / first.admin_ratio - 1.0);
  w.add("composite_change", last.composite / first.composite - 1.0);
  w.add("roi_change", last.roi / first.roi - 1.0);
  try {
    w.add("incremental_admin_cost", incremental_admin_cost(series));
  } catch (const DegenerateDataError&) {
    w.add("incremental_admin_cost", "undefined");
  }
  return w.text();
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Research-fund administration ratio model", "fundadmin"};
  app.require_subcommand(1, 1);

  Invocation inv;
  std::map<std::string, CLI::App*> cmds;
  const std::pair<const char*, const char*> specs[] = {
      {"evaluate", "evaluate the portfolio at one discretionary cost y"},
      {"sweep", "PortSR curve over an AR grid, as CSV"},
      {"optimize", "optimum administration ratio"},
      {"invert", "cheapest point meeting a minimum PSR"},
      {"calibrate", "fit the response function to observed data"},
      {"case-study", "annual-report analytics, as CSV"},
  };
  for (const auto& [name, help] : specs) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_flags(*cmd, inv);
    cmds[name] = cmd;
  }
  cmds["case-study"]->add_flag("--summary", inv.summary, "print scalar changes instead of the table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitDomain;
  }

  std::string name;
  for (const auto& [n, cmd] : cmds) {
    if (cmd->parsed()) name = n;
  }
  if (name != "case-study" && !inv.config_path) {
    err << "error: " << name << " requires --config PATH\n\n" << cmds[name]->help();
    return kExitDomain;
  }

  try {
    const RunConfig config = load_config(inv);
    std::string result;
    if (name == "evaluate") {
      result = cmd_evaluate(config);
    } else if (name == "sweep") {
      result = cmd_sweep(config);
    } else if (name == "optimize") {
      result = cmd_optimize(config, err);
    } else if (name == "invert") {
      result = cmd_invert(config);
    } else if (name == "calibrate") {
      result = cmd_calibrate(config);
    } else {
      result = cmd_case_study(config, inv.summary);
    }

    if (config.output_path) {
      write_file_atomic(*config.output_path, result);
    } else {
      out << result;
      out.flush();
      if (!out) throw IoError("failed writing to standard output");
    }
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace fundadmin
