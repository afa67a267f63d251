#include "json_io.hpp"

#include <cmath>

namespace wittenlab::cli {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json to_json(const Rational& r) {
  return {{"num", r.num()}, {"den", r.den()}, {"value", r.to_double()}, {"text", r.to_string()}};
}

json to_json(const FredholmDiagnosis& f) {
  return {{"fredholm", f.fredholm}, {"gap_plus", number(f.gap_plus)}, {"gap_minus", number(f.gap_minus)}};
}

json to_json(const SignedCounts& c) {
  return {{"positive", c.positive}, {"negative", c.negative}, {"zero", c.zero}};
}

json to_json(const RouteEstimate& r) {
  json plateaus = json::array();
  for (const auto& p : r.plateaus) {
    plateaus.push_back({{"L", p.L},
                        {"N", p.N},
                        {"found", p.found},
                        {"value", number(p.value)},
                        {"spread", number(p.spread)},
                        {"x", number(p.x)}});
  }
  json extrap = json::array();
  for (double e : r.extrapolation) extrap.push_back(number(e));
  return {{"estimate", number(r.estimate)},
          {"uncertainty", number(r.uncertainty)},
          {"converged", r.converged},
          {"plateaus", plateaus},
          {"extrapolation", extrap},
          {"message", r.message}};
}

json to_json(const ResolutionDiagnostics& d) {
  return {{"L", d.L},
          {"N", d.N},
          {"ker_H1", d.ker_H1},
          {"ker_H2", d.ker_H2},
          {"xi_H_window_average", number(d.xi_H_window_average)},
          {"pushnitski_window_average", number(d.pushnitski_window_average)},
          {"laplace_max_err", number(d.laplace_max_err)},
          {"semigroup_derivative", number(d.semigroup_derivative)},
          {"trace_rel_err", number(d.trace_rel_err)}};
}

namespace {

json table_json(const std::vector<TableRow>& rows, const char* x_name, const char* v_name) {
  json out = json::array();
  for (const auto& r : rows) out.push_back({{"L", r.L}, {"N", r.N}, {x_name, number(r.x)}, {v_name, number(r.value)}});
  return out;
}

}  // namespace

json to_json(const WittenReport& r) {
  json agreement = json::array();
  for (const auto& row : r.agreement) {
    json jr = json::array();
    for (double v : row) jr.push_back(number(v));
    agreement.push_back(jr);
  }
  json diags = json::array();
  for (const auto& d : r.diagnostics) diags.push_back(to_json(d));
  json errors = json::array();
  for (const auto& e : r.errors) errors.push_back(e);
  return {{"W_xi", to_json(r.W_xi)},
          {"W_counting", to_json(r.W_counting)},
          {"fredholm", to_json(r.fredholm)},
          {"W_r", to_json(r.resolvent)},
          {"W_s", to_json(r.semigroup)},
          {"quantization_residual", number(r.quantization_residual)},
          {"quantization_residual_r", number(r.quantization_residual_r)},
          {"quantization_residual_s", number(r.quantization_residual_s)},
          {"agreement_matrix", {{"labels", {"W_xi", "W_r", "W_s"}}, {"values", agreement}}},
          {"extrapolation_tables",
           {{"resolvent", table_json(r.resolvent.table, "lambda", "delta_r")},
            {"semigroup", table_json(r.semigroup.table, "t", "delta_s")}}},
          {"diagnostics", diags},
          {"converged", r.converged},
          {"errors", errors}};
}

json to_json(const TransformSettings& s) {
  return {{"gl_nodes", s.gl_nodes},
          {"de_tol", s.de_tol},
          {"de_max_level", s.de_max_level},
          {"truncation_radius", s.truncation_radius}};
}

json to_json(const RootInfo& r) {
  json probes = json::array();
  for (double p : r.probe_residuals) probes.push_back(number(p));
  return {{"location", number(r.location)},
          {"g0", number(r.g0)},
          {"weight", number(r.weight)},
          {"g0_divergent", r.g0_divergent},
          {"probe_residuals", probes}};
}

json to_json(const SymMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.rows()) {
    json jr = json::array();
    for (double v : row) jr.push_back(number(v));
    rows.push_back(jr);
  }
  return rows;
}

}  // namespace wittenlab::cli
