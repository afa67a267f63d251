#pragma once

// Spectral shift functions of matrix pairs, perturbation determinants and the
// counting form of the index.

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wittenlab/linalg.hpp"
#include "wittenlab/rational.hpp"

namespace wittenlab {

/// Piecewise-constant function. values[0] is the left tail, values[i+1] the
/// value right of breakpoints[i] (up to the next breakpoint), values.back()
/// the right tail.
class StepFunction {
 public:
  StepFunction() : values_{0.0} {}
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  /// Build from (location, jump) pairs on top of a constant left tail.
  /// Locations within merge_tol of their predecessor collapse into one
  /// breakpoint; breakpoints whose merged jump is exactly zero are dropped.
  static StepFunction from_jumps(double left_tail, std::vector<std::pair<double, double>> jumps,
                                 double merge_tol);

  [[nodiscard]] const std::vector<double>& breakpoints() const { return breakpoints_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] double left_tail() const { return values_.front(); }
  [[nodiscard]] double right_tail() const { return values_.back(); }

  /// Value at x; at a breakpoint the right value is returned.
  [[nodiscard]] double value_at(double x) const;
  /// One-sided limits at nu. Breakpoints inside [nu - tol, nu + tol] are all
  /// treated as sitting at nu.
  [[nodiscard]] std::pair<double, double> left_right_at(double nu, double tol = 0.0) const;
  /// Integral over the real line. Throws PreconditionError if a tail is nonzero.
  [[nodiscard]] double integral() const;
  /// Integral of the function times g' over [a, b] for an antiderivative g:
  /// sum over pieces of value * (g(right) - g(left)).
  template <class G>
  [[nodiscard]] double integrate_against_derivative(G g, double a, double b) const;

  [[nodiscard]] StepFunction operator-() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

template <class G>
double StepFunction::integrate_against_derivative(G g, double a, double b) const {
  if (!(b > a)) return 0.0;
  double total = 0.0;
  double left = a;
  double g_left = g(a);
  std::size_t i = 0;
  while (i < breakpoints_.size() && breakpoints_[i] <= a) ++i;
  for (; i <= breakpoints_.size(); ++i) {
    const double right = (i < breakpoints_.size()) ? std::min(breakpoints_[i], b) : b;
    const double g_right = g(right);
    total += values_[i] * (g_right - g_left);
    left = right;
    g_left = g_right;
    if (left >= b) break;
  }
  return total;
}

/// Tabulated real function with free-form numeric metadata (the epsilon used,
/// grid parameters and similar).
struct SampledFunction {
  std::vector<double> abscissae;
  std::vector<double> ordinates;
  std::map<std::string, double> metadata;

  /// Throws PreconditionError on unequal lengths or non-increasing abscissae.
  void validate() const;
};

/// Eigenvalues closer than this are merged into one breakpoint.
inline constexpr double kBreakpointMergeTol = 1e-10;

/// xi(lambda) = #{mu(A_minus) < lambda} - #{mu(A_plus) < lambda}.
[[nodiscard]] StepFunction ssf_pair(const SymMatrix& a_plus, const SymMatrix& a_minus);

/// One-sided limits (left, right) of xi at nu.
[[nodiscard]] std::pair<double, double> xi_left_right_at(const StepFunction& xi, double nu,
                                                         double tol = 0.0);

/// det(I + (A_plus - A_minus)(A_minus - z)^{-1}). Throws PreconditionError when
/// z lies within 1e-12 of an eigenvalue of A_minus.
[[nodiscard]] cplx perturbation_determinant(const SymMatrix& a_plus, const SymMatrix& a_minus, cplx z);

/// pi^{-1} Im ln D(lambda + i eps) on an increasing grid, the branch fixed by
/// continuation from lambda_0 + iY (anchor argument near 0) straight down to
/// height eps, then along the horizontal line through the grid.
[[nodiscard]] SampledFunction ssf_via_logdet(const SymMatrix& a_plus, const SymMatrix& a_minus,
                                             double eps, std::span<const double> grid);

/// (1/2)[#>(A_plus) - #>(A_minus)] - (1/2)[#<(A_plus) - #<(A_minus)].
[[nodiscard]] Rational index_counting(const SymMatrix& a_plus, const SymMatrix& a_minus,
                                      double zero_tol);

}  // namespace wittenlab
