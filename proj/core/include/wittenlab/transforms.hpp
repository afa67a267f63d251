#pragma once

// Singular integral transforms acting on spectral shift functions: the
// arcsine (Pushnitski) average, the S/T operators, the Abel pair, truncated
// Hilbert/Poisson operators and a Lebesgue-point probe.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wittenlab/model.hpp"
#include "wittenlab/ssf.hpp"

namespace wittenlab {

/// A real function of one variable together with the points where it may
/// jump or kink (quadrature splits there) and, optionally, a compact support.
struct ScalarFunction {
  std::function<double(double)> eval;
  std::vector<double> breakpoints;
  std::optional<std::pair<double, double>> support;

  double operator()(double x) const { return eval(x); }

  static ScalarFunction constant(double c);
  static ScalarFunction indicator(double a, double b);
  static ScalarFunction from_step(const StepFunction& f);
};

/// Quadrature parameters reported alongside results.
struct TransformSettings {
  std::size_t gl_nodes = 200;
  double de_tol = 1e-13;
  int de_max_level = 12;
  double truncation_radius = 1e3;
};

/// (1/pi) int_0^{sqrt(lambda)} f(nu) (lambda - nu^2)^{-1/2} dnu, computed as
/// (1/pi) int_0^{pi/2} f(sqrt(lambda) sin theta) dtheta with Gauss-Legendre
/// panels split at the images of the breakpoints.
[[nodiscard]] double op_S(const ScalarFunction& f, double lambda, const TransformSettings& s = {});

/// Arcsine average of a step function, exactly:
/// (1/pi) int_{-sqrt(lambda)}^{sqrt(lambda)} xi(nu) (lambda - nu^2)^{-1/2} dnu.
[[nodiscard]] double pushnitski_at(const StepFunction& xi, double lambda);
[[nodiscard]] SampledFunction pushnitski_forward(const StepFunction& xi, std::span<const double> grid);
/// Same average through op_S on nu -> f(nu) + f(-nu), for general f.
[[nodiscard]] double pushnitski_quadrature(const ScalarFunction& f, double lambda,
                                           const TransformSettings& s = {});

/// lambda int_R f(nu) (nu^2 + lambda)^{-3/2} dnu. Throws ConvergenceError
/// when the tails do not decay.
[[nodiscard]] double op_T(const ScalarFunction& f, double lambda, const TransformSettings& s = {});

/// -z int_R f(nu) (nu^2 - z)^{-3/2} dnu, principal branch, z off [0, inf).
[[nodiscard]] std::complex<double> op_T_complex(const ScalarFunction& f, std::complex<double> z,
                                                const TransformSettings& s = {});

/// F'(nu) = (2/pi) int_0^inf f'(u^2 + nu^2) du.
[[nodiscard]] double abel_Fprime(const std::function<double(double)>& fprime, double nu,
                                 const TransformSettings& s = {});
/// F(nu) = (nu/pi) int_0^inf (u^2 + nu^2)^{-1} [f(u^2 + nu^2) - f(0)] du, F(0) = 0.
[[nodiscard]] double abel_F(const std::function<double(double)>& f, double nu,
                            const TransformSettings& s = {});

struct TraceRelation {
  double lhs = 0.0;  // windowed tr(f(H2) - f(H1))
  double mid = 0.0;  // int xi(lambda; H2, H1) f'(lambda) dlambda
  double rhs = 0.0;  // tr(F(A_plus) - F(A_minus))
};

/// Three-way check of the trace relation for f on the model (f' enters only
/// through exact antiderivative increments against the step xi).
[[nodiscard]] TraceRelation trace_relation_check(const std::function<double(double)>& f,
                                                 const DiscretizedModel& m,
                                                 const TransformSettings& s = {});

/// pi^{-1} int_{|lambda - x| >= eps} f(x) / (lambda - x) dx over the support
/// (or [-R, R] if none).
[[nodiscard]] double hilbert_truncated(const ScalarFunction& f, double eps, double lambda,
                                       const TransformSettings& s = {});
/// pi^{-1} int eps f(x) / ((lambda - x)^2 + eps^2) dx over the whole line (or
/// the support).
[[nodiscard]] double poisson(const ScalarFunction& f, double eps, double lambda,
                             const TransformSettings& s = {});
/// pi^{-1} int (lambda - x) f(x) / ((lambda - x)^2 + eps^2) dx over the
/// support (or [-R, R]).
[[nodiscard]] double conj_poisson(const ScalarFunction& f, double eps, double lambda,
                                  const TransformSettings& s = {});

struct LebesguePointResult {
  double point = 0.0;
  std::optional<double> right_value;
  std::optional<double> left_value;
  bool right_lebesgue = false;
  bool left_lebesgue = false;
  /// (h, m(h)) with m(h) = h^{-1} int |f - alpha| over the one-sided window.
  std::vector<std::pair<double, double>> right_residual;
  std::vector<std::pair<double, double>> left_residual;
  double threshold = 1e-3;
};

/// Default probe widths h_k = 2^{-k}, k = 3..20.
[[nodiscard]] std::vector<double> default_lebesgue_h_sequence();

/// One-sided Lebesgue-point probe. A side is classified Lebesgue when the
/// residual at the smallest h is below the threshold and the residual curve
/// either vanishes identically or has positive log-log slope.
[[nodiscard]] LebesguePointResult lebesgue_classify(const ScalarFunction& f, double x,
                                                    std::span<const double> h_sequence,
                                                    double threshold = 1e-3,
                                                    const TransformSettings& s = {});

}  // namespace wittenlab
