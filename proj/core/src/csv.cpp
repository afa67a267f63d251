#include "wittenlab/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "wittenlab/error.hpp"

namespace wittenlab {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // fold -0 into 0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw PreconditionError("parse_double: cannot parse '" + std::string(s) + "'");
  }
  return v;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw PreconditionError("read_csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split(line);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) throw PreconditionError("read_csv: ragged row");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_step_csv(std::ostream& os, const StepFunction& f) {
  std::vector<std::vector<double>> rows;
  rows.push_back({-INFINITY, f.left_tail()});
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    rows.push_back({f.breakpoints()[i], f.values()[i + 1]});
  }
  write_csv(os, {"breakpoint", "value_right_of_breakpoint"}, rows);
}

StepFunction read_step_csv(std::istream& is) {
  const CsvTable t = read_csv(is);
  if (t.header.size() != 2 || t.rows.empty() || !std::isinf(t.rows[0][0])) {
    throw PreconditionError("read_step_csv: expected a leading -inf tail row");
  }
  std::vector<double> bps;
  std::vector<double> vals{t.rows[0][1]};
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    bps.push_back(t.rows[i][0]);
    vals.push_back(t.rows[i][1]);
  }
  return StepFunction(std::move(bps), std::move(vals));
}

void write_sampled_csv(std::ostream& os, const SampledFunction& f) {
  std::vector<std::vector<double>> rows;
  rows.reserve(f.abscissae.size());
  for (std::size_t i = 0; i < f.abscissae.size(); ++i) rows.push_back({f.abscissae[i], f.ordinates[i]});
  write_csv(os, {"abscissa", "ordinate"}, rows);
}

SampledFunction read_sampled_csv(std::istream& is) {
  const CsvTable t = read_csv(is);
  if (t.header.size() != 2) throw PreconditionError("read_sampled_csv: expected two columns");
  SampledFunction f;
  for (const auto& r : t.rows) {
    f.abscissae.push_back(r[0]);
    f.ordinates.push_back(r[1]);
  }
  f.validate();
  return f;
}

}  // namespace wittenlab
