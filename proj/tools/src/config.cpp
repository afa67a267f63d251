#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "wittenlab/error.hpp"

namespace wittenlab::cli {

namespace {

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

template <class T>
T as(const YAML::Node& n, const std::string& field, const char* what) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(field, std::string("expected ") + what);
  }
}

double as_real(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ConfigError(field, "expected a number");
  const auto v = as<double>(n, field, "a number");
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

std::size_t as_count(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ConfigError(field, "expected a non-negative integer");
  const auto v = as<long long>(n, field, "a non-negative integer");
  if (v < 0) throw ConfigError(field, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::vector<double> as_reals(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) throw ConfigError(field, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(as_real(n[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

// Rejects keys the section does not define, so typos do not pass silently.
void check_keys(const YAML::Node& n, const std::string& field, std::initializer_list<const char*> allowed) {
  if (!n.IsMap()) throw ConfigError(field, "expected a mapping");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!ok.count(key)) throw ConfigError(join(field, key), "unknown key");
  }
}

SymMatrix as_matrix(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence() || n.size() == 0) throw ConfigError(field, "expected a non-empty list of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    rows.push_back(as_reals(n[i], rf));
    if (rows.back().size() != n.size()) {
      throw ConfigError(rf, "row has " + std::to_string(rows.back().size()) + " entries, expected " +
                                std::to_string(n.size()) + " (matrix must be square)");
    }
  }
  try {
    return SymMatrix::from_rows(rows);
  } catch (const PreconditionError& e) {
    throw ConfigError(field, e.what());
  }
}

LinearGrid as_grid(const YAML::Node& n, const std::string& field, LinearGrid g) {
  check_keys(n, field, {"from", "to", "points"});
  if (n["from"]) g.from = as_real(n["from"], join(field, "from"));
  if (n["to"]) g.to = as_real(n["to"], join(field, "to"));
  if (n["points"]) g.points = as_count(n["points"], join(field, "points"));
  if (g.points < 1) throw ConfigError(join(field, "points"), "must be at least 1");
  if (g.points > 1 && !(g.to > g.from)) throw ConfigError(join(field, "to"), "must exceed `from`");
  return g;
}

void parse_path(const YAML::Node& n, RunConfig& cfg) {
  check_keys(n, "path", {"dim", "A_minus", "B_plus", "profile"});
  if (!n["A_minus"]) throw ConfigError("path.A_minus", "missing");
  if (!n["B_plus"]) throw ConfigError("path.B_plus", "missing");
  PathSpec p;
  p.a_minus = as_matrix(n["A_minus"], "path.A_minus");
  p.b_plus = as_matrix(n["B_plus"], "path.B_plus");
  if (p.a_minus.size() != p.b_plus.size()) {
    throw ConfigError("path.B_plus", "dimension " + std::to_string(p.b_plus.size()) + " differs from A_minus (" +
                                         std::to_string(p.a_minus.size()) + ")");
  }
  if (n["dim"]) {
    const auto d = as_count(n["dim"], "path.dim");
    if (d != p.a_minus.size()) {
      throw ConfigError("path.dim", "is " + std::to_string(d) + " but A_minus is " +
                                        std::to_string(p.a_minus.size()) + "x" + std::to_string(p.a_minus.size()));
    }
  }
  if (const auto pr = n["profile"]) {
    std::string name;
    if (pr.IsScalar()) {
      name = pr.as<std::string>();
    } else {
      check_keys(pr, "path.profile", {"name", "t", "s"});
      if (!pr["name"]) throw ConfigError("path.profile.name", "missing");
      name = as<std::string>(pr["name"], "path.profile.name", "a profile name");
      if (pr["t"]) p.profile_t = as_reals(pr["t"], "path.profile.t");
      if (pr["s"]) p.profile_s = as_reals(pr["s"], "path.profile.s");
    }
    try {
      p.profile = parse_profile_kind(name);
    } catch (const PreconditionError&) {
      throw ConfigError("path.profile", "unknown profile `" + name +
                                            "` (expected logistic, tanh_rescaled or custom-sampled)");
    }
    if (p.profile == ProfileKind::custom_sampled && (p.profile_t.empty() || p.profile_s.empty())) {
      throw ConfigError("path.profile", "custom-sampled needs `t` and `s` sample lists");
    }
  }
  try {
    (void)p.make_path();
  } catch (const PreconditionError& e) {
    throw ConfigError("path.profile", e.what());
  }
  cfg.path = std::move(p);
}

void parse_grid(const YAML::Node& n, RunConfig& cfg) {
  check_keys(n, "grid", {"resolutions", "lambda_schedule", "t_schedule", "bulk_fraction", "plateau_tol",
                         "plateau_window", "richardson_order"});
  GridSpec& g = cfg.grid;
  if (const auto r = n["resolutions"]) {
    if (!r.IsSequence() || r.size() == 0) throw ConfigError("grid.resolutions", "expected a non-empty list of [L, N]");
    g.resolutions.clear();
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string f = "grid.resolutions[" + std::to_string(i) + "]";
      if (!r[i].IsSequence() || r[i].size() != 2) throw ConfigError(f, "expected [L, N]");
      Resolution res{as_real(r[i][0], f + ".L"), as_count(r[i][1], f + ".N")};
      if (!(res.L > 0.0)) throw ConfigError(f + ".L", "must be positive");
      if (res.N < 3 || res.N % 2 == 0) throw ConfigError(f + ".N", "must be odd and at least 3");
      g.resolutions.push_back(res);
    }
  }
  if (n["lambda_schedule"]) g.lambda_schedule = as_reals(n["lambda_schedule"], "grid.lambda_schedule");
  if (n["t_schedule"]) g.t_schedule = as_reals(n["t_schedule"], "grid.t_schedule");
  if (n["bulk_fraction"]) {
    g.bulk_fraction = as_real(n["bulk_fraction"], "grid.bulk_fraction");
    if (!(g.bulk_fraction > 0.0 && g.bulk_fraction <= 1.0)) {
      throw ConfigError("grid.bulk_fraction", "must lie in (0, 1]");
    }
  }
  if (n["plateau_tol"]) {
    g.plateau.tol = as_real(n["plateau_tol"], "grid.plateau_tol");
    if (!(g.plateau.tol > 0.0)) throw ConfigError("grid.plateau_tol", "must be positive");
  }
  if (n["plateau_window"]) {
    g.plateau.window = as_count(n["plateau_window"], "grid.plateau_window");
    if (g.plateau.window < 2) throw ConfigError("grid.plateau_window", "must be at least 2");
  }
  if (n["richardson_order"]) {
    const auto p = as_count(n["richardson_order"], "grid.richardson_order");
    if (p < 1) throw ConfigError("grid.richardson_order", "must be at least 1");
    g.plateau.richardson_order = static_cast<int>(p);
  }

  // Schedule preconditions of the resolvent and semigroup routes.
  for (const auto& res : g.resolutions) {
    for (std::size_t i = 0; i < g.lambda_schedule.size(); ++i) {
      const double x = g.lambda_schedule[i];
      const std::string f = "grid.lambda_schedule[" + std::to_string(i) + "]";
      if (!(x < 0.0)) throw ConfigError(f, "lambda must be negative");
      if (-x < lambda_floor(res.L) * (1.0 - 1e-12)) {
        std::ostringstream os;
        os << "violates the finite-size floor |lambda| >= 25/L^2 = " << lambda_floor(res.L) << " at L = " << res.L;
        throw ConfigError(f, os.str());
      }
    }
    for (std::size_t i = 0; i < g.t_schedule.size(); ++i) {
      const double x = g.t_schedule[i];
      const std::string f = "grid.t_schedule[" + std::to_string(i) + "]";
      if (!(x > 0.0)) throw ConfigError(f, "t must be positive");
      if (x > t_cap(res.L) * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "violates the truncation cap t <= L^2/25 = " << t_cap(res.L) << " at L = " << res.L;
        throw ConfigError(f, os.str());
      }
    }
  }
  if (g.lambda_schedule.size() == 1 || g.t_schedule.size() == 1) {
    throw ConfigError(g.lambda_schedule.size() == 1 ? "grid.lambda_schedule" : "grid.t_schedule",
                      "needs at least the plateau window of points");
  }
}

void parse_transform(const YAML::Node& n, RunConfig& cfg) {
  check_keys(n, "transform", {"gl_nodes", "de_tol", "de_max_level", "truncation_radius"});
  auto& t = cfg.transform;
  if (n["gl_nodes"]) {
    t.gl_nodes = as_count(n["gl_nodes"], "transform.gl_nodes");
    if (t.gl_nodes < 2) throw ConfigError("transform.gl_nodes", "must be at least 2");
  }
  if (n["de_tol"]) {
    t.de_tol = as_real(n["de_tol"], "transform.de_tol");
    if (!(t.de_tol > 0.0)) throw ConfigError("transform.de_tol", "must be positive");
  }
  if (n["de_max_level"]) {
    const auto v = as_count(n["de_max_level"], "transform.de_max_level");
    if (v < 3 || v > 20) throw ConfigError("transform.de_max_level", "must lie in [3, 20]");
    t.de_max_level = static_cast<int>(v);
  }
  if (n["truncation_radius"]) {
    t.truncation_radius = as_real(n["truncation_radius"], "transform.truncation_radius");
    if (!(t.truncation_radius > 0.0)) throw ConfigError("transform.truncation_radius", "must be positive");
  }
}

void parse_output(const YAML::Node& n, RunConfig& cfg) {
  check_keys(n, "output", {"directory", "formats"});
  if (n["directory"]) cfg.output.directory = as<std::string>(n["directory"], "output.directory", "a path");
  if (const auto f = n["formats"]) {
    if (!f.IsSequence()) throw ConfigError("output.formats", "expected a list drawn from [csv, json]");
    cfg.output.csv = cfg.output.json = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto v = as<std::string>(f[i], "output.formats", "a format name");
      if (v == "csv") {
        cfg.output.csv = true;
      } else if (v == "json") {
        cfg.output.json = true;
      } else {
        throw ConfigError("output.formats[" + std::to_string(i) + "]", "unknown format `" + v + "`");
      }
    }
  }
}

void parse_ssf(const YAML::Node& n, RunConfig& cfg) {
  check_keys(n, "ssf", {"eps", "grid", "random_pairs", "random_max_dim"});
  if (n["eps"]) {
    cfg.ssf.eps = as_real(n["eps"], "ssf.eps");
    if (!(cfg.ssf.eps > 0.0)) throw ConfigError("ssf.eps", "must be positive");
  }
  if (n["grid"]) cfg.ssf.grid = as_grid(n["grid"], "ssf.grid", cfg.ssf.grid);
  if (n["random_pairs"]) cfg.ssf.random_pairs = as_count(n["random_pairs"], "ssf.random_pairs");
  if (n["random_max_dim"]) {
    cfg.ssf.random_max_dim = as_count(n["random_max_dim"], "ssf.random_max_dim");
    if (cfg.ssf.random_max_dim < 1) throw ConfigError("ssf.random_max_dim", "must be at least 1");
  }
}

void parse_pushnitski(const YAML::Node& n, RunConfig& cfg) {
  check_keys(n, "pushnitski", {"source", "a", "b", "lambda"});
  auto& p = cfg.pushnitski;
  if (n["source"]) p.source = as<std::string>(n["source"], "pushnitski.source", "`indicator` or `path`");
  if (p.source != "indicator" && p.source != "path") {
    throw ConfigError("pushnitski.source", "expected `indicator` or `path`");
  }
  if (n["a"]) p.a = as_real(n["a"], "pushnitski.a");
  if (n["b"]) p.b = as_real(n["b"], "pushnitski.b");
  if (!(p.b > p.a)) throw ConfigError("pushnitski.b", "must exceed `a`");
  if (n["lambda"]) p.lambda = as_grid(n["lambda"], "pushnitski.lambda", p.lambda);
  if (!(p.lambda.from > 0.0)) throw ConfigError("pushnitski.lambda.from", "lambda must be positive");
}

void parse_abel(const YAML::Node& n, RunConfig& cfg) {
  check_keys(n, "abel", {"f", "z", "s", "nu"});
  auto& a = cfg.abel;
  if (n["f"]) a.f = as<std::string>(n["f"], "abel.f", "`resolvent` or `heat`");
  if (a.f != "resolvent" && a.f != "heat") throw ConfigError("abel.f", "expected `resolvent` or `heat`");
  if (n["z"]) a.z = as_real(n["z"], "abel.z");
  if (!(a.z < 0.0)) throw ConfigError("abel.z", "must be negative (off the cut [0, inf))");
  if (n["s"]) a.s = as_real(n["s"], "abel.s");
  if (!(a.s > 0.0)) throw ConfigError("abel.s", "must be positive");
  if (n["nu"]) a.nu = as_grid(n["nu"], "abel.nu", a.nu);
}

void parse_rankone(const YAML::Node& n, RunConfig& cfg) {
  check_keys(n, "rankone", {"atoms", "alphas", "eps", "grid"});
  auto& r = cfg.rankone;
  if (const auto at = n["atoms"]) {
    if (!at.IsSequence() || at.size() == 0) throw ConfigError("rankone.atoms", "expected a list of [location, weight]");
    for (std::size_t i = 0; i < at.size(); ++i) {
      const std::string f = "rankone.atoms[" + std::to_string(i) + "]";
      if (!at[i].IsSequence() || at[i].size() != 2) throw ConfigError(f, "expected [location, weight]");
      r.atoms.push_back({as_real(at[i][0], f + ".location"), as_real(at[i][1], f + ".weight")});
    }
    try {
      (void)DiscreteMeasure(r.atoms);
    } catch (const PreconditionError& e) {
      throw ConfigError("rankone.atoms", e.what());
    }
  }
  if (n["alphas"]) r.alphas = as_reals(n["alphas"], "rankone.alphas");
  for (std::size_t i = 0; i < r.alphas.size(); ++i) {
    if (r.alphas[i] == 0.0) throw ConfigError("rankone.alphas[" + std::to_string(i) + "]", "must be nonzero");
  }
  if (n["eps"]) {
    r.eps = as_real(n["eps"], "rankone.eps");
    if (!(r.eps > 0.0)) throw ConfigError("rankone.eps", "must be positive");
  }
  if (n["grid"]) r.grid = as_grid(n["grid"], "rankone.grid", r.grid);
}

void parse_trace_check(const YAML::Node& n, RunConfig& cfg) {
  check_keys(n, "trace_check", {"resolution", "z", "heat_s"});
  auto& t = cfg.trace_check;
  if (const auto r = n["resolution"]) {
    if (!r.IsSequence() || r.size() != 2) throw ConfigError("trace_check.resolution", "expected [L, N]");
    t.resolution = {as_real(r[0], "trace_check.resolution.L"), as_count(r[1], "trace_check.resolution.N")};
    if (!(t.resolution.L > 0.0)) throw ConfigError("trace_check.resolution.L", "must be positive");
    if (t.resolution.N < 3 || t.resolution.N % 2 == 0) {
      throw ConfigError("trace_check.resolution.N", "must be odd and at least 3");
    }
  }
  if (n["z"]) t.z = as_reals(n["z"], "trace_check.z");
  for (std::size_t i = 0; i < t.z.size(); ++i) {
    if (!(t.z[i] < 0.0)) throw ConfigError("trace_check.z[" + std::to_string(i) + "]", "must be negative");
  }
  if (n["heat_s"]) t.heat_s = as_reals(n["heat_s"], "trace_check.heat_s");
  for (std::size_t i = 0; i < t.heat_s.size(); ++i) {
    if (!(t.heat_s[i] > 0.0)) throw ConfigError("trace_check.heat_s[" + std::to_string(i) + "]", "must be positive");
  }
}

}  // namespace

std::vector<double> LinearGrid::values() const {
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = from;
    return v;
  }
  for (std::size_t i = 0; i < points; ++i) {
    v[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  v.back() = to;
  return v;
}

Profile PathSpec::make_profile() const {
  switch (profile) {
    case ProfileKind::logistic:
      return Profile::logistic();
    case ProfileKind::tanh_rescaled:
      return Profile::tanh_rescaled();
    case ProfileKind::custom_sampled:
      return Profile::custom_sampled(profile_t, profile_s);
  }
  return Profile::logistic();
}

OperatorPath PathSpec::make_path() const { return build_path(a_minus, b_plus, make_profile()); }

RunConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<document>", std::string("YAML syntax error: ") + e.what());
  }
  RunConfig cfg;
  cfg.source_text = yaml_text;
  if (root.IsNull()) return cfg;
  check_keys(root, "", {"path", "grid", "transform", "output", "seed", "fredholm_tol", "kernel_tol", "ssf",
                        "pushnitski", "abel", "rankone", "trace_check"});
  // Grid first: the path check does not depend on it, but schedule checks do.
  if (root["grid"]) parse_grid(root["grid"], cfg);
  if (root["path"]) parse_path(root["path"], cfg);
  if (root["transform"]) parse_transform(root["transform"], cfg);
  if (root["output"]) parse_output(root["output"], cfg);
  if (root["seed"]) cfg.seed = as_count(root["seed"], "seed");
  if (root["fredholm_tol"]) {
    cfg.fredholm_tol = as_real(root["fredholm_tol"], "fredholm_tol");
    if (!(cfg.fredholm_tol > 0.0)) throw ConfigError("fredholm_tol", "must be positive");
  }
  if (root["kernel_tol"]) {
    cfg.kernel_tol = as_real(root["kernel_tol"], "kernel_tol");
    if (!(cfg.kernel_tol > 0.0)) throw ConfigError("kernel_tol", "must be positive");
  }
  if (root["ssf"]) parse_ssf(root["ssf"], cfg);
  if (root["pushnitski"]) parse_pushnitski(root["pushnitski"], cfg);
  if (root["abel"]) parse_abel(root["abel"], cfg);
  if (root["rankone"]) parse_rankone(root["rankone"], cfg);
  if (root["trace_check"]) parse_trace_check(root["trace_check"], cfg);
  return cfg;
}

RunConfig load_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("--config", "cannot open `" + file + "`");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

const PathSpec& require_path(const RunConfig& cfg) {
  if (!cfg.path) throw ConfigError("path", "this command needs a `path` section (A_minus, B_plus)");
  return *cfg.path;
}

}  // namespace wittenlab::cli
