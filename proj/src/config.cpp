#include "fundadmin/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "fundadmin/errors.hpp"

namespace fundadmin {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.';
  });
}

std::string where(const std::string& key, const ConfigEntry& e) {
  return e.line > 0 ? "line " + std::to_string(e.line) + ": '" + key + "'" : "flag for '" + key + "'";
}

double as_double(const std::string& key, const ConfigEntry& e) {
  double v = 0.0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError(where(key, e) + " expects a number, got '" + e.value + "'");
  }
  return v;
}

int as_int(const std::string& key, const ConfigEntry& e) {
  int v = 0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(where(key, e) + " expects an integer, got '" + e.value + "'");
  return v;
}

bool as_bool(const std::string& key, const ConfigEntry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ParseError(where(key, e) + " expects true or false, got '" + e.value + "'");
}

std::vector<std::string> as_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

const std::vector<std::string_view>& known_config_keys() {
  static const std::vector<std::string_view> keys = {
      "v_p",           "v_i",           "b",
      "psr_in",        "domain",        "rdi_focus",
      "domain_matrix", "money_unit",    "zar_to_usd",
      "response.kind", "response.c",    "response.k",
      "response.max_delta",             "risk.mode",
      "risk.psr_min",  "sweep.start",   "sweep.stop",
      "sweep.step",    "y",             "tasks",
      "integer_projects",               "observed.admin_cost",
      "observed.port_sr",               "weights.publication",
      "weights.masters",                "weights.doctorate",
      "weights.patent",                 "weights.base_value",
      "data",          "base_year",     "output",
      "precision",
  };
  return keys;
}

ConfigEntries parse_config_entries(std::string_view text) {
  ConfigEntries entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!valid_key(key)) throw ParseError("line " + std::to_string(line_no) + ": malformed key '" + key + "'");
    if (value.empty()) throw ParseError("line " + std::to_string(line_no) + ": key '" + key + "' has no value");
    if (entries.count(key)) throw ParseError("line " + std::to_string(line_no) + ": key '" + key + "' repeated");
    entries.emplace(key, ConfigEntry{value, line_no});
  }
  return entries;
}

RunConfig build_run_config(const ConfigEntries& entries) {
  const auto& known = known_config_keys();
  for (const auto& [key, entry] : entries) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError(where(key, entry) + " is not a recognised key");
    }
  }

  const auto get = [&](const char* key) -> const ConfigEntry* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  const auto number = [&](const char* key) -> std::optional<double> {
    if (const auto* e = get(key)) return as_double(key, *e);
    return std::nullopt;
  };
  const auto text = [&](const char* key) -> std::optional<std::string> {
    if (const auto* e = get(key)) return e->value;
    return std::nullopt;
  };

  RunConfig c;
  c.total_fund_value = number("v_p");
  c.project_value = number("v_i");
  if (auto b = number("b")) c.base_cost_fraction = *b;
  c.intrinsic_success_rate = number("psr_in");
  c.domain = text("domain");
  c.rdi_focus = text("rdi_focus");
  c.domain_matrix_path = text("domain_matrix");
  if (auto unit = text("money_unit")) c.money_unit = *unit;
  if (const auto* e = get("zar_to_usd")) c.zar_to_usd = as_bool("zar_to_usd", *e);

  if (auto kind = text("response.kind")) c.response_kind = parse_response_kind(*kind);
  c.response_c = number("response.c");
  c.response_k = number("response.k");
  if (auto m = number("response.max_delta")) c.response_max_delta = *m;

  if (auto mode = text("risk.mode")) {
    if (*mode == "maximize_portsr") {
      c.risk.mode = RiskPreference::Mode::maximize_portsr;
    } else if (*mode == "min_psr") {
      c.risk.mode = RiskPreference::Mode::min_psr;
    } else {
      throw ValidationError("risk.mode must be 'maximize_portsr' or 'min_psr', got '" + *mode + "'");
    }
  }
  if (auto p = number("risk.psr_min")) {
    c.risk.psr_min = *p;
    c.psr_min_given = true;
  }

  c.sweep_start = number("sweep.start");
  if (auto v = number("sweep.stop")) c.sweep_stop = *v;
  if (auto v = number("sweep.step")) c.sweep_step = *v;

  c.y = number("y");
  if (auto tasks = text("tasks")) c.tasks = as_list(*tasks);
  if (const auto* e = get("integer_projects")) c.integer_projects = as_bool("integer_projects", *e);

  c.observed_admin_cost = number("observed.admin_cost");
  c.observed_port_sr = number("observed.port_sr");

  if (auto v = number("weights.publication")) c.weights.publication = *v;
  if (auto v = number("weights.masters")) c.weights.masters = *v;
  if (auto v = number("weights.doctorate")) c.weights.doctorate = *v;
  if (auto v = number("weights.patent")) c.weights.patent = *v;
  if (auto v = number("weights.base_value")) c.weights.base_publication_value = *v;

  c.data_path = text("data");
  if (const auto* e = get("base_year")) c.base_year = as_int("base_year", *e);
  c.output_path = text("output");
  if (const auto* e = get("precision")) c.precision = as_int("precision", *e);

  // Constraints.
  require(!c.total_fund_value || *c.total_fund_value > 0.0, "v_p must be > 0");
  require(!c.project_value || *c.project_value > 0.0, "v_i must be > 0");
  require(c.base_cost_fraction >= 0.0 && c.base_cost_fraction < 1.0, "b must lie in [0, 1) (B must be < 1)");
  require(!c.intrinsic_success_rate || (*c.intrinsic_success_rate >= 0.0 && *c.intrinsic_success_rate <= 1.0),
          "psr_in must lie in [0, 1]");
  require(!c.response_c || *c.response_c >= 0.0, "response.c must be >= 0");
  require(!c.response_k || *c.response_k > 0.0, "response.k must be > 0");
  require(c.response_max_delta >= 0.0 && c.response_max_delta <= 1.0, "response.max_delta must lie in [0, 1]");
  require(c.risk.psr_min >= 0.0 && c.risk.psr_min <= 1.0, "risk.psr_min must lie in [0, 1]");
  require(c.sweep_step > 0.0, "sweep.step must be > 0");
  require(c.sweep_start.value_or(c.base_cost_fraction) <= c.sweep_stop, "sweep.start must not exceed sweep.stop");
  require(!c.y || *c.y >= 0.0, "y must be >= 0");
  require(!c.observed_admin_cost || *c.observed_admin_cost > 0.0, "observed.admin_cost must be > 0");
  require(!c.observed_port_sr || (*c.observed_port_sr > 0.0 && *c.observed_port_sr <= 1.0),
          "observed.port_sr must lie in (0, 1]");
  require(c.precision >= 1 && c.precision <= 17, "precision must lie in [1, 17]");
  validate(c.weights);
  if (c.total_fund_value && c.project_value && c.intrinsic_success_rate) {
    validate(FundSpec{*c.total_fund_value, *c.project_value, c.base_cost_fraction, *c.intrinsic_success_rate,
                      c.money_unit});
  }
  return c;
}

RunConfig parse_config(std::string_view text) { return build_run_config(parse_config_entries(text)); }

FundSpec fund_spec_from(const RunConfig& c, const DomainMatrix& matrix) {
  require(c.total_fund_value.has_value(), "missing required key v_p");
  require(c.project_value.has_value(), "missing required key v_i");
  double psr_in = 0.0;
  if (c.intrinsic_success_rate) {
    psr_in = *c.intrinsic_success_rate;
  } else if (c.domain && c.rdi_focus) {
    psr_in = psr_lookup(matrix, *c.domain, *c.rdi_focus);
  } else {
    throw ValidationError("missing required key psr_in (or domain and rdi_focus)");
  }
  FundSpec spec{*c.total_fund_value, *c.project_value, c.base_cost_fraction, psr_in, c.money_unit};
  validate(spec);
  return spec;
}

ResponseModel response_from(const RunConfig& c) {
  require(c.response_kind.has_value(), "missing required key response.kind");
  require(c.response_c.has_value(), "missing required key response.c");
  if (*c.response_kind == ResponseKind::linear) return ResponseModel::linear(*c.response_c, c.response_max_delta);
  require(c.response_k.has_value(), "missing required key response.k");
  return ResponseModel::saturating(*c.response_c, *c.response_k);
}

}  // namespace fundadmin
