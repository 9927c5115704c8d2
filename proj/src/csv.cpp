#include "fundadmin/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fundadmin/errors.hpp"

namespace fundadmin {

std::string format_fixed(double value, int significant) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  significant = std::clamp(significant, 1, 17);
  if (value == 0.0) value = 0.0;  // drops the sign of -0

  // The exponent is taken after rounding so 999.9996 becomes 1000.00.
  char sci[64];
  std::snprintf(sci, sizeof sci, "%.*e", significant - 1, value);
  const char* e = std::strchr(sci, 'e');
  const int exponent = e ? std::atoi(e + 1) : 0;
  const int decimals = std::max(0, significant - 1 - exponent);

  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string out(buf);
  // Values that round to zero keep no sign.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    std::string f = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto first = f.find_first_not_of(" \t");
    const auto last = f.find_last_not_of(" \t");
    fields.push_back(first == std::string::npos ? std::string() : f.substr(first, last - first + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return fields;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

double cell_number(const std::string& cell, std::size_t row, const std::string& column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw ParseError("row " + std::to_string(row) + ", column '" + column + "': '" + cell + "' is not a number");
  }
  return v;
}

int cell_int(const std::string& cell, std::size_t row, const std::string& column) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("row " + std::to_string(row) + ", column '" + column + "': '" + cell + "' is not an integer");
  }
  return v;
}

// Data rows are numbered from 1, the header being row 0.
std::vector<std::string> row_fields(const std::string& line, std::size_t row, std::size_t expected) {
  auto fields = split_fields(line);
  if (fields.size() != expected) {
    throw ParseError("row " + std::to_string(row) + ": expected " + std::to_string(expected) + " fields, found " +
                     std::to_string(fields.size()));
  }
  return fields;
}

}  // namespace

std::vector<AnnualRecord> parse_annual_csv(std::string_view text) {
  const auto lines = split_lines(text);
  const std::string base(kAnnualHeader);
  const std::string with_deflator = base + ",deflator";
  if (lines.empty()) throw FormatError("empty file; expected header '" + base + "[,deflator]'");
  const auto header = join(split_fields(lines[0]));
  if (header != base && header != with_deflator) {
    throw FormatError("unexpected header '" + lines[0] + "'; expected '" + base + "[,deflator]'");
  }
  const bool has_deflator = header == with_deflator;
  const auto columns = split_fields(header);

  std::vector<AnnualRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = row_fields(lines[i], i, columns.size());
    AnnualRecord r;
    r.year = cell_int(f[0], i, columns[0]);
    r.disbursed = cell_number(f[1], i, columns[1]);
    r.admin_cost = cell_number(f[2], i, columns[2]);
    r.projects = cell_number(f[3], i, columns[3]);
    r.publications = cell_number(f[4], i, columns[4]);
    r.masters = cell_number(f[5], i, columns[5]);
    r.doctorates = cell_number(f[6], i, columns[6]);
    r.patents = cell_number(f[7], i, columns[7]);
    if (has_deflator && !f[8].empty()) r.deflator = cell_number(f[8], i, columns[8]);
    validate(r);
    records.push_back(r);
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const AnnualRecord& a, const AnnualRecord& b) { return a.year < b.year; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].year == records[i - 1].year) {
      throw ValidationError("duplicate year " + std::to_string(records[i].year));
    }
  }
  return records;
}

std::vector<AnnualRecord> read_annual_csv(const std::filesystem::path& path) {
  return parse_annual_csv(read_text_file(path));
}

CalibrationData parse_calibration_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw FormatError("empty file; expected header 'y,delta_psr' or 'ar,port_sr'");
  const auto header = join(split_fields(lines[0]));
  CalibrationData data;
  if (header == "ar,port_sr") {
    data.from_observations = true;
  } else if (header != "y,delta_psr") {
    throw FormatError("unexpected header '" + lines[0] + "'; expected 'y,delta_psr' or 'ar,port_sr'");
  }
  const auto columns = split_fields(header);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = row_fields(lines[i], i, 2);
    const double a = cell_number(f[0], i, columns[0]);
    const double b = cell_number(f[1], i, columns[1]);
    if (data.from_observations) {
      data.observations.push_back({a, b});
    } else {
      data.samples.push_back({a, b});
    }
  }
  return data;
}

CalibrationData read_calibration_csv(const std::filesystem::path& path) {
  return parse_calibration_csv(read_text_file(path));
}

DomainMatrix parse_domain_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || join(split_fields(lines[0])) != "domain,rdi_focus,psr_in") {
    throw FormatError("expected header 'domain,rdi_focus,psr_in'");
  }
  DomainMatrix m;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = row_fields(lines[i], i, 3);
    m.set(f[0], f[1], cell_number(f[2], i, "psr_in"));
  }
  return m;
}

DomainMatrix read_domain_csv(const std::filesystem::path& path) { return parse_domain_csv(read_text_file(path)); }

std::string format_sweep_csv(std::span<const PortfolioPoint> points, int significant) {
  if (points.empty()) throw ValidationError("sweep output needs at least one point");
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& p : points) {
    for (double v : {p.ar, p.y, p.np, p.psr, p.nsp}) {
      out += format_fixed(v, significant);
      out += ',';
    }
    out += format_fixed(p.port_sr, significant);
    out += '\n';
  }
  return out;
}

void write_sweep_csv(std::span<const PortfolioPoint> points, std::ostream& sink, int significant) {
  const std::string text = format_sweep_csv(points, significant);
  sink.write(text.data(), static_cast<std::streamsize>(text.size()));
  sink.flush();
  if (!sink) throw IoError("failed to write sweep output");
}

std::string format_report_csv(std::span<const ReportRow> rows, int significant) {
  std::string out =
      "year,projects,funding_per_project,admin_ratio,composite,roi,"
      "projects_index,funding_per_project_index,admin_ratio_index,composite_index,roi_index\n";
  for (const auto& r : rows) {
    out += std::to_string(r.year);
    for (double v : {r.projects, r.funding_per_project, r.admin_ratio, r.composite, r.roi, r.projects_index,
                     r.funding_per_project_index, r.admin_ratio_index, r.composite_index, r.roi_index}) {
      out += ',';
      out += format_fixed(v, significant);
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot rename into '" + path.string() + "': " + ec.message());
  }
}

}  // namespace fundadmin
