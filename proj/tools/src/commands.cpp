#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "json_io.hpp"
#include "wittenlab/csv.hpp"
#include "wittenlab/error.hpp"
#include "wittenlab/rankone.hpp"
#include "wittenlab/sampling.hpp"
#include "wittenlab/ssf.hpp"
#include "wittenlab/transforms.hpp"
#include "wittenlab/witten.hpp"

#ifndef WITTENLAB_VERSION
#define WITTENLAB_VERSION "unknown"
#endif

namespace wittenlab::cli {

namespace fs = std::filesystem;

namespace {

// Per-run state shared by the commands.
struct Run {
  const RunConfig& cfg;
  fs::path dir;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::ostream& log;
  std::vector<std::string> artifacts;
  json summary = json::object();  // command-specific manifest extras

  void write_text(const std::string& name, const std::string& text) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw ResourceError("cannot write " + (dir / name).string());
    os << text;
    artifacts.push_back(name);
  }
  void write_json(const std::string& name, const json& j) {
    if (cfg.output.json) write_text(name, j.dump(2) + "\n");
  }
  template <class F>
  void write_csv_with(const std::string& name, F&& emit) {
    if (!cfg.output.csv) return;
    std::ostringstream os;
    emit(os);
    write_text(name, os.str());
  }
};

double zero_tol_for(const SymMatrix& a_plus, const SymMatrix& a_minus) {
  return std::max(default_zero_tol(a_plus), default_zero_tol(a_minus));
}

ReportConfig report_config(const RunConfig& cfg, unsigned threads) {
  ReportConfig rc;
  rc.resolutions = cfg.grid.resolutions;
  if (!cfg.grid.lambda_schedule.empty()) rc.lambda_schedules = {cfg.grid.lambda_schedule};
  if (!cfg.grid.t_schedule.empty()) rc.t_schedules = {cfg.grid.t_schedule};
  rc.plateau = cfg.grid.plateau;
  rc.fredholm_tol = cfg.fredholm_tol;
  rc.kernel_tol = cfg.kernel_tol;
  rc.bulk_fraction = cfg.grid.bulk_fraction;
  rc.threads = threads;
  return rc;
}

int cmd_witten(Run& run) {
  const OperatorPath path = require_path(run.cfg).make_path();
  const WittenReport r = full_report(path, report_config(run.cfg, run.threads));

  run.write_json("report.json", to_json(r));
  run.write_csv_with("delta_r.csv", [&](std::ostream& os) {
    std::vector<std::vector<double>> rows;
    for (const auto& t : r.resolvent.table) rows.push_back({t.L, static_cast<double>(t.N), t.x, t.value});
    write_csv(os, {"L", "N", "lambda", "delta_r"}, rows);
  });
  run.write_csv_with("delta_s.csv", [&](std::ostream& os) {
    std::vector<std::vector<double>> rows;
    for (const auto& t : r.semigroup.table) rows.push_back({t.L, static_cast<double>(t.N), t.x, t.value});
    write_csv(os, {"L", "N", "t", "delta_s"}, rows);
  });
  run.write_csv_with("xi_A.csv", [&](std::ostream& os) { write_step_csv(os, r.xi_A); });
  run.write_csv_with("xi_H.csv", [&](std::ostream& os) { write_sampled_csv(os, r.xi_H); });

  run.log << "W_xi = " << r.W_xi.to_string() << ", W_r = " << r.resolvent.estimate << " +- "
          << r.resolvent.uncertainty << ", W_s = " << r.semigroup.estimate << " +- " << r.semigroup.uncertainty
          << (r.fredholm.fredholm ? " (Fredholm)" : " (not Fredholm)") << "\n";
  for (const auto& e : r.errors) run.log << "warning: " << e << "\n";
  run.summary = {{"W_xi", r.W_xi.to_string()}, {"converged", r.converged}};
  return r.converged ? kExitOk : kExitNonConvergent;
}

// Seeded quantization suite: random pairs of dimension 1..max_dim, some
// eigenvalues exactly zero so that half-integers occur.
json random_suite(Run& run, std::vector<std::vector<double>>& rows) {
  std::mt19937_64 rng(run.seed);
  std::uniform_int_distribution<std::size_t> dim_dist(1, run.cfg.ssf.random_max_dim);
  std::size_t mismatches = 0;
  std::size_t non_half = 0;
  for (std::size_t i = 0; i < run.cfg.ssf.random_pairs; ++i) {
    const std::size_t n = dim_dist(rng);
    const SymMatrix a_minus = random_symmetric_with_zeros(rng, n, 0.2, 2.0, 0.25);
    const SymMatrix a_plus = random_symmetric_with_zeros(rng, n, 0.2, 2.0, 0.25);
    const Rational w = witten_from_ssf(ssf_pair(a_plus, a_minus));
    const Rational c = index_counting(a_plus, a_minus, zero_tol_for(a_plus, a_minus));
    if (!(w == c)) ++mismatches;
    if (!(w + w).is_integer()) ++non_half;
    rows.push_back({static_cast<double>(i), static_cast<double>(n), w.to_double(), c.to_double()});
  }
  return {{"pairs", run.cfg.ssf.random_pairs},
          {"max_dim", run.cfg.ssf.random_max_dim},
          {"seed", run.seed},
          {"mismatches", mismatches},
          {"non_half_integer", non_half}};
}

int cmd_ssf(Run& run) {
  const PathSpec& p = require_path(run.cfg);
  const SymMatrix a_plus = p.a_minus + p.b_plus;
  const SymMatrix& a_minus = p.a_minus;
  const StepFunction xi = ssf_pair(a_plus, a_minus);
  const double tol = zero_tol_for(a_plus, a_minus);
  const Rational w = witten_from_ssf(xi);
  const Rational c = index_counting(a_plus, a_minus, tol);

  const std::vector<double> grid = run.cfg.ssf.grid.values();
  const SampledFunction scan = ssf_via_logdet(a_plus, a_minus, run.cfg.ssf.eps, grid);
  // Boundary values converge like eps / distance, so compare away from jumps.
  const double exclusion = 1e-2;
  double max_err = 0.0;
  std::vector<std::vector<double>> scan_rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double exact = xi.value_at(grid[i]);
    scan_rows.push_back({grid[i], scan.ordinates[i], exact});
    const bool near = std::any_of(xi.breakpoints().begin(), xi.breakpoints().end(),
                                  [&](double b) { return std::abs(b - grid[i]) < exclusion; });
    if (!near) max_err = std::max(max_err, std::abs(scan.ordinates[i] - exact));
  }
  const auto [left, right] = xi_left_right_at(xi, 0.0, kBreakpointMergeTol);

  json summary = {{"W_xi", to_json(w)},
                  {"counting", to_json(c)},
                  {"counting_identity_holds", w == c},
                  {"xi_at_zero", {{"left", left}, {"right", right}}},
                  {"signed_counts",
                   {{"A_plus", to_json(signed_counts(eigh(a_plus), tol))},
                    {"A_minus", to_json(signed_counts(eigh(a_minus), tol))}}},
                  {"zero_tol", tol},
                  {"logdet",
                   {{"eps", run.cfg.ssf.eps},
                    {"exclusion_radius", exclusion},
                    {"max_abs_err_off_breakpoints", number(max_err)}}}};
  std::vector<std::vector<double>> random_rows;
  if (run.cfg.ssf.random_pairs > 0) summary["random_suite"] = random_suite(run, random_rows);

  run.write_json("ssf.json", summary);
  run.write_csv_with("xi_A.csv", [&](std::ostream& os) { write_step_csv(os, xi); });
  run.write_csv_with("ssf_logdet.csv",
                     [&](std::ostream& os) { write_csv(os, {"lambda", "xi_logdet", "xi_exact"}, scan_rows); });
  if (!random_rows.empty()) {
    run.write_csv_with("ssf_random.csv",
                       [&](std::ostream& os) { write_csv(os, {"trial", "dim", "W_xi", "counting"}, random_rows); });
  }
  run.log << "W_xi = " << w.to_string() << ", counting = " << c.to_string()
          << ", logdet max error = " << max_err << "\n";
  run.summary = {{"W_xi", w.to_string()}};
  return kExitOk;
}

int cmd_pushnitski(Run& run) {
  const auto& ps = run.cfg.pushnitski;
  StepFunction xi({ps.a, ps.b}, {0.0, 1.0, 0.0});
  if (ps.source == "path") {
    const PathSpec& p = require_path(run.cfg);
    xi = ssf_pair(p.a_minus + p.b_plus, p.a_minus);
  }
  const std::vector<double> grid = ps.lambda.values();
  const SampledFunction exact = pushnitski_forward(xi, grid);
  const ScalarFunction f = ScalarFunction::from_step(xi);
  double max_diff = 0.0;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double q = pushnitski_quadrature(f, grid[i], run.cfg.transform);
    max_diff = std::max(max_diff, std::abs(q - exact.ordinates[i]));
    rows.push_back({grid[i], exact.ordinates[i], q});
  }
  const auto [left, right] = xi.left_right_at(0.0, kBreakpointMergeTol);
  const double limit = pushnitski_at(xi, 1e-12);

  run.write_csv_with("pushnitski.csv",
                     [&](std::ostream& os) { write_csv(os, {"lambda", "pushnitski", "quadrature"}, rows); });
  run.write_json("pushnitski.json", {{"source", ps.source},
                                     {"max_abs_diff_quadrature", number(max_diff)},
                                     {"value_at_1e-12", number(limit)},
                                     {"xi_average_at_zero", number(0.5 * (left + right))}});
  run.log << "arcsine average at lambda = 1e-12: " << limit << ", quadrature cross-check " << max_diff << "\n";
  return kExitOk;
}

int cmd_abel(Run& run) {
  const auto& a = run.cfg.abel;
  std::function<double(double)> f;
  std::function<double(double)> fp;
  std::function<double(double)> F_exact;
  std::function<double(double)> Fp_exact;
  if (a.f == "resolvent") {
    const double z = a.z;
    f = [z](double x) { return 1.0 / (x - z); };
    fp = [z](double x) { return -1.0 / ((x - z) * (x - z)); };
    F_exact = [z](double nu) { return nu / (2.0 * z * std::sqrt(nu * nu - z)); };
    Fp_exact = [z](double nu) { return -0.5 / std::pow(nu * nu - z, 1.5); };
  } else {
    const double s = a.s;
    f = [s](double x) { return std::exp(-s * x); };
    fp = [s](double x) { return -s * std::exp(-s * x); };
    F_exact = [s](double nu) { return -0.5 * std::erf(std::sqrt(s) * nu); };
    Fp_exact = [s](double nu) { return -std::sqrt(s / std::numbers::pi) * std::exp(-s * nu * nu); };
  }
  double err_F = 0.0;
  double err_Fp = 0.0;
  std::vector<std::vector<double>> rows;
  for (double nu : a.nu.values()) {
    const double F = abel_F(f, nu, run.cfg.transform);
    const double Fp = abel_Fprime(fp, nu, run.cfg.transform);
    const double Fe = F_exact(nu);
    const double Fpe = Fp_exact(nu);
    err_F = std::max(err_F, std::abs(F - Fe));
    err_Fp = std::max(err_Fp, std::abs(Fp - Fpe));
    rows.push_back({nu, F, Fp, Fe, Fpe});
  }
  run.write_csv_with("abel.csv", [&](std::ostream& os) {
    write_csv(os, {"nu", "F", "F_prime", "F_closed", "F_prime_closed"}, rows);
  });
  json params = a.f == "resolvent" ? json{{"z", a.z}} : json{{"s", a.s}};
  run.write_json("abel.json", {{"f", a.f},
                               {"parameters", params},
                               {"max_abs_err_F", number(err_F)},
                               {"max_abs_err_F_prime", number(err_Fp)}});
  run.log << "abel " << a.f << ": max |F - closed form| = " << err_F << ", max |F' - closed form| = " << err_Fp
          << "\n";
  return kExitOk;
}

int cmd_rankone(Run& run) {
  const auto& r = run.cfg.rankone;
  if (r.atoms.empty()) throw ConfigError("rankone.atoms", "missing (list of [location, weight])");
  const DiscreteMeasure mu(r.atoms);
  const std::vector<double> grid = r.grid.values();
  const std::vector<double> probes = default_eps_probes();
  const double exclusion = 1e-2;

  std::vector<std::vector<double>> rows;
  json reports = json::array();
  for (double alpha : r.alphas) {
    const StepFunction oracle = matrix_oracle(mu, alpha);
    double max_diff = 0.0;
    double lo = 1.0;
    double hi = 0.0;
    for (double lam : grid) {
      const double x = xi_alpha(mu, alpha, lam, r.eps);
      const double o = oracle.value_at(lam);
      rows.push_back({alpha, lam, x, o});
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      const bool near = std::any_of(oracle.breakpoints().begin(), oracle.breakpoints().end(),
                                    [&](double b) { return std::abs(b - lam) < exclusion; });
      if (!near) max_diff = std::max(max_diff, std::abs(x - o));
    }
    const SpectralTypeReport st = classify_spectral_type(mu, alpha, grid, probes);
    std::map<std::string, std::size_t> counts;
    for (auto l : st.membership) ++counts[to_string(l)];
    json labels = json::array();
    for (auto l : st.membership) labels.push_back(to_string(l));
    json roots = json::array();
    for (const auto& root : st.eigenvalues) roots.push_back(to_json(root));
    reports.push_back({{"alpha", alpha},
                       {"max_abs_diff_off_breakpoints", number(max_diff)},
                       {"xi_range", {number(lo), number(hi)}},
                       {"eigenvalues", roots},
                       {"membership", labels},
                       {"membership_counts", counts}});
  }
  json atoms = json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"location", a.location}, {"weight", a.weight}});
  json grid_json = json::array();
  for (double g : grid) grid_json.push_back(g);
  run.write_json("rankone.json", {{"atoms", atoms},
                                  {"eps", r.eps},
                                  {"eps_probes", probes},
                                  {"exclusion_radius", exclusion},
                                  {"grid", grid_json},
                                  {"reports", reports}});
  run.write_csv_with("rankone_xi.csv",
                     [&](std::ostream& os) { write_csv(os, {"alpha", "lambda", "xi_alpha", "xi_oracle"}, rows); });
  run.log << "rank-one: " << r.alphas.size() << " couplings on " << grid.size() << " points\n";
  return kExitOk;
}

int cmd_fredholm(Run& run) {
  const OperatorPath path = require_path(run.cfg).make_path();
  const FredholmDiagnosis d = fredholm_check(path, run.cfg.fredholm_tol);
  std::string message = "Fredholm";
  if (!d.fredholm) {
    message = "not Fredholm";
    if (d.gap_plus <= run.cfg.fredholm_tol) message += ", gap_plus=" + format_double(d.gap_plus);
    if (d.gap_minus <= run.cfg.fredholm_tol) message += ", gap_minus=" + format_double(d.gap_minus);
  }
  json strips = json::array();
  for (double s : essential_spectrum_strips(path)) strips.push_back(s);
  json j = to_json(d);
  j["tol"] = run.cfg.fredholm_tol;
  j["essential_spectrum_strips"] = strips;
  j["message"] = message;
  run.write_json("fredholm.json", j);
  run.log << message << "\n";
  return kExitOk;
}

int cmd_trace_check(Run& run) {
  const OperatorPath path = require_path(run.cfg).make_path();
  const auto& tc = run.cfg.trace_check;
  DiscretizeOptions opts;
  opts.bulk_fraction = run.cfg.grid.bulk_fraction;
  const DiscretizedModel m = discretize(path, tc.resolution.L, tc.resolution.N, opts);

  std::vector<std::vector<double>> rows;
  json resolvent = json::array();
  for (double z : tc.z) {
    const TraceCheck c = resolvent_trace_check(m, {z, 0.0});
    rows.push_back({z, c.lhs.real(), c.rhs.real(), c.rel_err});
    resolvent.push_back(
        {{"z", z}, {"lhs", number(c.lhs.real())}, {"rhs", number(c.rhs.real())}, {"rel_err", number(c.rel_err)}});
  }
  json relations = json::array();
  auto relation = [&](const char* name, double param, const std::function<double(double)>& f) {
    const TraceRelation t = trace_relation_check(f, m, run.cfg.transform);
    relations.push_back({{"f", name},
                         {"parameter", param},
                         {"lhs", number(t.lhs)},
                         {"mid", number(t.mid)},
                         {"rhs", number(t.rhs)}});
  };
  for (double z : tc.z) relation("resolvent", z, [z](double x) { return 1.0 / (x - z); });
  for (double s : tc.heat_s) relation("heat", s, [s](double x) { return std::exp(-s * x); });

  run.write_csv_with("trace_check.csv", [&](std::ostream& os) { write_csv(os, {"z", "lhs", "rhs", "rel_err"}, rows); });
  run.write_csv_with("eigenvalues.csv", [&](std::ostream& os) {
    const auto& e1 = m.spectrum_H1().values;
    const auto& e2 = m.spectrum_H2().values;
    std::vector<std::vector<double>> eig;
    eig.reserve(e1.size());
    for (std::size_t i = 0; i < e1.size(); ++i) eig.push_back({static_cast<double>(i), e1[i], e2[i]});
    write_csv(os, {"index", "eigenvalue_H1", "eigenvalue_H2"}, eig);
  });
  run.write_json("trace_check.json", {{"L", tc.resolution.L},
                                      {"N", tc.resolution.N},
                                      {"bulk_fraction", run.cfg.grid.bulk_fraction},
                                      {"resolvent", resolvent},
                                      {"relations", relations}});
  for (const auto& r : rows) run.log << "z = " << r[0] << ": relative error " << r[3] << "\n";
  return kExitOk;
}

const std::map<std::string, int (*)(Run&)>& dispatch() {
  static const std::map<std::string, int (*)(Run&)> table = {
      {"witten", cmd_witten},   {"ssf", cmd_ssf},           {"pushnitski", cmd_pushnitski},
      {"abel", cmd_abel},       {"rankone", cmd_rankone},   {"fredholm", cmd_fredholm},
      {"trace-check", cmd_trace_check}};
  return table;
}

void write_manifest(Run& run, const std::string& name, int status, double seconds, const std::string& error) {
  json artifacts = json::array();
  for (const auto& a : run.artifacts) artifacts.push_back(a);
  json m = {{"tool", "wittenlab"},
            {"version", WITTENLAB_VERSION},
            {"command", name},
            {"status", status},
            {"seed", run.seed},
            {"threads", run.threads},
            {"max_dim", default_max_dim()},
            {"config", run.cfg.source_text},
            {"quadrature", to_json(run.cfg.transform)},
            {"artifacts", artifacts},
            {"summary", run.summary},
            {"timings_seconds", {{"total", seconds}}}};
  if (!error.empty()) m["error"] = error;
  std::ofstream os(run.dir / "manifest.json", std::ios::binary);
  if (os) os << m.dump(2) << "\n";
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"witten", "ssf", "pushnitski", "abel",
                                                 "rankone", "fredholm", "trace-check"};
  return names;
}

int run_command(const std::string& name, const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
  const auto it = dispatch().find(name);
  if (it == dispatch().end()) {
    log << "error: unknown command `" << name << "`\n";
    return kExitUsage;
  }
  Run run{cfg, opts.out.value_or(fs::path(cfg.output.directory)), std::max(1u, opts.threads),
          opts.seed.value_or(cfg.seed), log, {}, json::object()};
  std::error_code ec;
  fs::create_directories(run.dir, ec);
  if (ec) {
    log << "error: cannot create output directory " << run.dir << ": " << ec.message() << "\n";
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int status = kExitOk;
  std::string error;
  try {
    status = it->second(run);
  } catch (const ConfigError& e) {
    error = std::string("config error: ") + e.what();
    status = kExitUsage;
  } catch (const ConvergenceError& e) {
    error = std::string("non-convergent: ") + e.what();
    status = kExitNonConvergent;
  } catch (const std::exception& e) {
    // PreconditionError, ResourceError and anything else a bad input provokes.
    error = std::string("error: ") + e.what();
    status = kExitUsage;
  }
  if (!error.empty()) log << error << "\n";
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(run, name, status, seconds, error);
  return status;
}

}  // namespace wittenlab::cli
