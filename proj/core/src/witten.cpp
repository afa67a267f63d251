#include "wittenlab/witten.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "wittenlab/error.hpp"
#include "wittenlab/parallel.hpp"
#include "wittenlab/transforms.hpp"

namespace wittenlab {

Rational witten_from_ssf(const StepFunction& xi, double tol) {
  const auto [left, right] = xi.left_right_at(0.0, tol);
  const double l = std::round(left);
  const double r = std::round(right);
  if (std::abs(l - left) > 1e-9 || std::abs(r - right) > 1e-9) {
    throw PreconditionError("witten_from_ssf: xi must be integer valued near 0");
  }
  return Rational(static_cast<std::int64_t>(l) + static_cast<std::int64_t>(r), 2);
}

std::vector<Resolution> default_resolutions() { return {{20.0, 1001}, {40.0, 2001}}; }

std::vector<double> default_lambda_schedule(double L) {
  std::vector<double> s;
  for (int j = 0; j <= 12; ++j) s.push_back(-lambda_floor(L) * std::exp2(j / 4.0));
  return s;
}

std::vector<double> default_t_schedule(double L) {
  std::vector<double> s;
  for (int j = 0; j <= 12; ++j) s.push_back(t_cap(L) * std::exp2(-j / 4.0));
  return s;
}

namespace {

enum class Route { resolvent, semigroup };

const std::vector<double>& schedule_for(const std::vector<std::vector<double>>& schedules, std::size_t i,
                                        std::vector<double>& fallback, Route route, double L) {
  if (schedules.empty()) {
    fallback = route == Route::resolvent ? default_lambda_schedule(L) : default_t_schedule(L);
    return fallback;
  }
  if (schedules.size() == 1) return schedules.front();
  if (i >= schedules.size()) throw PreconditionError("witten: fewer schedules than resolutions");
  return schedules[i];
}

void validate_schedule(const std::vector<double>& s, Route route, double L) {
  if (s.size() < 1) throw PreconditionError("witten: empty schedule");
  for (double x : s) {
    if (route == Route::resolvent) {
      if (!(x < 0.0)) throw PreconditionError("witten_resolvent: lambda schedule values must be negative");
      if (-x < lambda_floor(L) * (1.0 - 1e-12)) {
        throw PreconditionError("witten_resolvent: |lambda| = " + std::to_string(-x) +
                                " is below the finite-size floor 25/L^2 = " + std::to_string(lambda_floor(L)));
      }
    } else {
      if (!(x > 0.0)) throw PreconditionError("witten_semigroup: t schedule values must be positive");
      if (x > t_cap(L) * (1.0 + 1e-12)) {
        throw PreconditionError("witten_semigroup: t = " + std::to_string(x) + " exceeds the truncation cap L^2/25 = " +
                                std::to_string(t_cap(L)));
      }
    }
  }
}

Plateau find_plateau(const DiscretizedModel& m, std::vector<std::pair<double, double>> pts,
                     const PlateauSettings& ps) {
  // Order from the limit end: for negative lambda and for positive t alike the
  // limit lies at the largest abscissa.
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  Plateau p;
  p.L = m.L();
  p.N = m.N();
  const std::size_t w = std::max<std::size_t>(ps.window, 1);
  for (std::size_t i = 0; i + w <= pts.size(); ++i) {
    double lo = pts[i].second;
    double hi = pts[i].second;
    for (std::size_t k = i; k < i + w; ++k) {
      lo = std::min(lo, pts[k].second);
      hi = std::max(hi, pts[k].second);
    }
    if (hi - lo < ps.tol) {
      p.found = true;
      p.value = pts[i].second;
      p.x = pts[i].first;
      p.spread = hi - lo;
      break;
    }
  }
  return p;
}

RouteEstimate run_route(const std::vector<std::shared_ptr<const DiscretizedModel>>& models,
                        const std::vector<std::vector<double>>& schedules, const PlateauSettings& ps, Route route) {
  if (models.empty()) throw PreconditionError("witten: need at least one resolution");
  RouteEstimate out;
  std::vector<const DiscretizedModel*> order;
  for (const auto& m : models) order.push_back(m.get());
  std::vector<std::size_t> idx(order.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return order[a]->L() < order[b]->L(); });

  for (std::size_t i : idx) {
    const DiscretizedModel& m = *order[i];
    std::vector<double> fallback;
    const auto& sched = schedule_for(schedules, i, fallback, route, m.L());
    validate_schedule(sched, route, m.L());
    std::vector<std::pair<double, double>> pts;
    for (double x : sched) pts.emplace_back(x, route == Route::resolvent ? delta_r(m, x) : delta_s(m, x));
    std::sort(pts.begin(), pts.end());
    for (const auto& [x, v] : pts) out.table.push_back({m.L(), m.N(), x, v});
    out.plateaus.push_back(find_plateau(m, pts, ps));
  }

  double max_spread = 0.0;
  bool all_found = true;
  for (const auto& p : out.plateaus) {
    all_found = all_found && p.found;
    if (p.found) max_spread = std::max(max_spread, p.spread);
  }
  std::vector<const Plateau*> found;
  for (const auto& p : out.plateaus) {
    if (p.found) found.push_back(&p);
  }
  if (found.empty()) {
    out.converged = false;
    out.estimate = out.table.empty() ? 0.0 : out.table.back().value;
    out.uncertainty = INFINITY;
    out.message = "no plateau found at any resolution";
    return out;
  }
  double estimate = found.front()->value;
  double increment = 0.0;
  if (found.size() >= 2 && ps.richardson_order > 0) {
    const double p = ps.richardson_order;
    for (std::size_t k = 1; k < found.size(); ++k) {
      const double l1 = std::pow(found[k - 1]->L, p);
      const double l2 = std::pow(found[k]->L, p);
      if (l2 == l1) continue;
      estimate = (l2 * found[k]->value - l1 * found[k - 1]->value) / (l2 - l1);
      out.extrapolation.push_back(estimate);
    }
    increment = std::abs(estimate - found.back()->value);
  } else {
    estimate = found.back()->value;
  }
  out.estimate = estimate;
  out.uncertainty = std::max(increment, max_spread);
  out.converged = all_found;
  if (!all_found) out.message = "plateau missing at some resolutions";
  return out;
}

std::vector<std::shared_ptr<const DiscretizedModel>> build_models(const OperatorPath& path,
                                                                  const std::vector<Resolution>& res,
                                                                  unsigned threads, double bulk_fraction = 0.5) {
  return parallel_map<std::shared_ptr<const DiscretizedModel>>(res.size(), threads, [&](std::size_t i) {
    DiscretizeOptions opts;
    opts.bulk_fraction = bulk_fraction;
    return std::make_shared<const DiscretizedModel>(discretize(path, res[i].L, res[i].N, opts));
  });
}

}  // namespace

RouteEstimate witten_resolvent(const std::vector<std::shared_ptr<const DiscretizedModel>>& models,
                               const std::vector<std::vector<double>>& lambda_schedules, const PlateauSettings& ps) {
  return run_route(models, lambda_schedules, ps, Route::resolvent);
}

RouteEstimate witten_semigroup(const std::vector<std::shared_ptr<const DiscretizedModel>>& models,
                               const std::vector<std::vector<double>>& t_schedules, const PlateauSettings& ps) {
  return run_route(models, t_schedules, ps, Route::semigroup);
}

RouteEstimate witten_resolvent(const OperatorPath& path, const std::vector<Resolution>& res,
                               const std::vector<std::vector<double>>& lambda_schedules, const PlateauSettings& ps,
                               unsigned threads) {
  return witten_resolvent(build_models(path, res, threads), lambda_schedules, ps);
}

RouteEstimate witten_semigroup(const OperatorPath& path, const std::vector<Resolution>& res,
                               const std::vector<std::vector<double>>& t_schedules, const PlateauSettings& ps,
                               unsigned threads) {
  return witten_semigroup(build_models(path, res, threads), t_schedules, ps);
}

double laplace_consistency(const DiscretizedModel& m, const std::vector<double>& t_grid) {
  const StepFunction xi = ssf_H_step(m);
  const auto& bps = xi.breakpoints();
  double worst = 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw PreconditionError("laplace_consistency: t values must be positive");
    const double lhs = -delta_s(m, t);
    double integral = 0.0;  // t int xi(s) e^{-ts} ds, exact per piece
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
      integral += xi.values()[i + 1] * (std::exp(-t * bps[i]) - std::exp(-t * bps[i + 1]));
    }
    const double rhs = -integral;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  return worst;
}

WittenReport full_report(const OperatorPath& path, const ReportConfig& cfg) {
  WittenReport r;
  const double zero_tol = cfg.zero_tol > 0.0
                              ? cfg.zero_tol
                              : std::max(default_zero_tol(path.a_plus()), default_zero_tol(path.a_minus()));
  r.xi_A = ssf_pair(path.a_plus(), path.a_minus());
  r.W_xi = witten_from_ssf(r.xi_A, zero_tol);
  r.W_counting = index_counting(path.a_plus(), path.a_minus(), zero_tol);
  r.fredholm = fredholm_check(path, cfg.fredholm_tol);
  const double two_w = 2.0 * r.W_xi.to_double();
  r.quantization_residual = std::abs(two_w - std::round(two_w));

  std::vector<std::shared_ptr<const DiscretizedModel>> models;
  try {
    models = build_models(path, cfg.resolutions, cfg.threads, cfg.bulk_fraction);
  } catch (const std::exception& e) {
    r.errors.push_back(std::string("discretize: ") + e.what());
    return r;
  }

  try {
    r.resolvent = witten_resolvent(models, cfg.lambda_schedules, cfg.plateau);
  } catch (const std::exception& e) {
    r.errors.push_back(std::string("witten_resolvent: ") + e.what());
  }
  try {
    r.semigroup = witten_semigroup(models, cfg.t_schedules, cfg.plateau);
  } catch (const std::exception& e) {
    r.errors.push_back(std::string("witten_semigroup: ") + e.what());
  }
  auto qres = [](double w) { return std::abs(2.0 * w - std::round(2.0 * w)); };
  r.quantization_residual_r = qres(r.resolvent.estimate);
  r.quantization_residual_s = qres(r.semigroup.estimate);
  const std::array<double, 3> w{r.W_xi.to_double(), r.resolvent.estimate, r.semigroup.estimate};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r.agreement[i][j] = std::abs(w[i] - w[j]);

  std::vector<double> window;
  for (std::size_t k = 0; k < cfg.window_points; ++k) {
    const double f = cfg.window_points > 1 ? static_cast<double>(k) / static_cast<double>(cfg.window_points - 1) : 0.5;
    window.push_back(cfg.window_lo + f * (cfg.window_hi - cfg.window_lo));
  }
  for (std::size_t i = 0; i < models.size(); ++i) {
    const DiscretizedModel& m = *models[i];
    ResolutionDiagnostics d;
    d.L = m.L();
    d.N = m.N();
    try {
      std::tie(d.ker_H1, d.ker_H2) = kernel_dims(m, cfg.kernel_tol);
      const SampledFunction xh = ssf_H_discrete(m, window);
      const SampledFunction xp = pushnitski_forward(r.xi_A, window);
      for (std::size_t k = 0; k < window.size(); ++k) {
        d.xi_H_window_average += xh.ordinates[k] / static_cast<double>(window.size());
        d.pushnitski_window_average += xp.ordinates[k] / static_cast<double>(window.size());
      }
      d.laplace_max_err = laplace_consistency(m, cfg.laplace_t);
      for (const auto& p : r.semigroup.plateaus) {
        if (p.found && p.L == m.L() && p.N == m.N()) d.semigroup_derivative = delta_s_derivative(m, p.x);
      }
      d.trace_rel_err = resolvent_trace_check(m, {-1.0, 0.0}).rel_err;
      if (i + 1 == models.size() || m.L() >= models.back()->L()) r.xi_H = xh;
    } catch (const std::exception& e) {
      r.errors.push_back("diagnostics at L=" + std::to_string(m.L()) + ": " + e.what());
    }
    r.diagnostics.push_back(d);
  }
  r.converged = r.resolvent.converged && r.semigroup.converged;
  return r;
}

}  // namespace wittenlab
