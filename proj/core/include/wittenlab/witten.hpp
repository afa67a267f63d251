#pragma once

// The three routes to the Witten index (resolvent limit, semigroup limit and
// the xi average at 0) and the consolidated report.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wittenlab/model.hpp"
#include "wittenlab/rational.hpp"
#include "wittenlab/ssf.hpp"

namespace wittenlab {

/// [xi(0+) + xi(0-)]/2 for an integer-valued xi; breakpoints within tol of 0
/// count as sitting at 0. Throws PreconditionError for non-integer values.
[[nodiscard]] Rational witten_from_ssf(const StepFunction& xi, double tol = kBreakpointMergeTol);

struct Resolution {
  double L = 0.0;
  std::size_t N = 0;
};

[[nodiscard]] std::vector<Resolution> default_resolutions();

/// -(25/L^2) 2^{j/4}, j = 0..12: starts at the finite-size floor.
[[nodiscard]] std::vector<double> default_lambda_schedule(double L);
/// (L^2/25) 2^{-j/4}, j = 0..12: starts at the truncation cap.
[[nodiscard]] std::vector<double> default_t_schedule(double L);
[[nodiscard]] inline double lambda_floor(double L) { return 25.0 / (L * L); }
[[nodiscard]] inline double t_cap(double L) { return L * L / 25.0; }

struct PlateauSettings {
  double tol = 0.02;
  std::size_t window = 3;
  /// Richardson order p in 1/L: P = (L2^p P2 - L1^p P1) / (L2^p - L1^p).
  int richardson_order = 1;
};

struct TableRow {
  double L = 0.0;
  std::size_t N = 0;
  double x = 0.0;  // lambda or t
  double value = 0.0;
};

struct Plateau {
  double L = 0.0;
  std::size_t N = 0;
  bool found = false;
  double value = 0.0;
  double spread = 0.0;
  double x = 0.0;  // schedule point nearest the limit inside the window
};

struct RouteEstimate {
  double estimate = 0.0;
  double uncertainty = 0.0;
  bool converged = false;
  std::vector<TableRow> table;  // by resolution, then by x ascending
  std::vector<Plateau> plateaus;
  std::vector<double> extrapolation;  // successive Richardson values
  std::string message;
};

/// Validates schedules against the floor/cap; an empty schedule list means
/// the defaults. One schedule per model, or a single schedule shared by all.
[[nodiscard]] RouteEstimate witten_resolvent(const std::vector<std::shared_ptr<const DiscretizedModel>>& models,
                                             const std::vector<std::vector<double>>& lambda_schedules = {},
                                             const PlateauSettings& ps = {});
[[nodiscard]] RouteEstimate witten_semigroup(const std::vector<std::shared_ptr<const DiscretizedModel>>& models,
                                             const std::vector<std::vector<double>>& t_schedules = {},
                                             const PlateauSettings& ps = {});

/// Convenience forms that discretize the path at each resolution first.
[[nodiscard]] RouteEstimate witten_resolvent(const OperatorPath& path, const std::vector<Resolution>& res,
                                             const std::vector<std::vector<double>>& lambda_schedules = {},
                                             const PlateauSettings& ps = {}, unsigned threads = 1);
[[nodiscard]] RouteEstimate witten_semigroup(const OperatorPath& path, const std::vector<Resolution>& res,
                                             const std::vector<std::vector<double>>& t_schedules = {},
                                             const PlateauSettings& ps = {}, unsigned threads = 1);

/// max over t of |tr(e^{-tH2} - e^{-tH1}) + t int_0^inf xi(s) e^{-ts} ds| / max(1, |lhs|)
/// with xi the windowed counting step function of the model.
[[nodiscard]] double laplace_consistency(const DiscretizedModel& m, const std::vector<double>& t_grid);

struct ReportConfig {
  std::vector<Resolution> resolutions = default_resolutions();
  std::vector<std::vector<double>> lambda_schedules;  // empty: defaults
  std::vector<std::vector<double>> t_schedules;       // empty: defaults
  PlateauSettings plateau;
  double zero_tol = 0.0;        // 0: 1e-8 (1 + max|A|) per asymptote
  double fredholm_tol = 1e-8;
  double kernel_tol = 1e-4;
  double window_lo = 0.1;       // xi_H window for the arcsine cross-check
  double window_hi = 0.9;
  std::size_t window_points = 81;
  std::vector<double> laplace_t = {0.5, 1.0, 5.0, 20.0};
  double bulk_fraction = 0.5;
  unsigned threads = 1;
};

struct ResolutionDiagnostics {
  double L = 0.0;
  std::size_t N = 0;
  std::size_t ker_H1 = 0;
  std::size_t ker_H2 = 0;
  double xi_H_window_average = 0.0;
  double pushnitski_window_average = 0.0;
  double laplace_max_err = 0.0;
  double semigroup_derivative = 0.0;  // d/dt delta_s at the plateau point
  double trace_rel_err = 0.0;         // resolvent trace formula at z = -1
};

struct WittenReport {
  Rational W_xi;
  Rational W_counting;
  StepFunction xi_A;
  FredholmDiagnosis fredholm;
  RouteEstimate resolvent;
  RouteEstimate semigroup;
  double quantization_residual = 0.0;     // |2 W_xi - round(2 W_xi)|
  double quantization_residual_r = 0.0;   // same for the resolvent estimate
  double quantization_residual_s = 0.0;
  /// Pairwise |difference| between {W_xi, W_r, W_s}.
  std::array<std::array<double, 3>, 3> agreement{};
  std::vector<ResolutionDiagnostics> diagnostics;
  SampledFunction xi_H;  // finest resolution, sampled on the window grid
  bool converged = false;
  std::vector<std::string> errors;
};

/// Runs every route; component failures are collected in `errors`.
[[nodiscard]] WittenReport full_report(const OperatorPath& path, const ReportConfig& cfg = {});

}  // namespace wittenlab
