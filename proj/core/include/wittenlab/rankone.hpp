#pragma once

// Rank-one perturbations A_alpha = A_0 + alpha (f_0, .) f_0 through the
// spectral measure of f_0: Borel transforms, boundary values of xi, and
// spectral-type probes.

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wittenlab/ssf.hpp"
#include "wittenlab/transforms.hpp"

namespace wittenlab {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// Point masses plus an optional absolutely continuous part given by a
/// non-negative piecewise-linear density (zero outside its grid).
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms, std::vector<double> density_x = {},
                           std::vector<double> density_y = {});

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] const std::vector<double>& density_x() const { return dx_; }
  [[nodiscard]] const std::vector<double>& density_y() const { return dy_; }
  [[nodiscard]] bool has_density() const { return !dx_.empty(); }
  [[nodiscard]] bool empty() const { return atoms_.empty() && dx_.empty(); }
  [[nodiscard]] double total_mass() const;
  [[nodiscard]] double density_at(double x) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> dx_;
  std::vector<double> dy_;
};

/// F_0(z) = int dmu(x) / (x - z); the density part is integrated in closed form.
[[nodiscard]] std::complex<double> borel_transform(const DiscreteMeasure& mu, std::complex<double> z);

/// F_0 / (1 + alpha F_0). Also checks Im F_alpha = Im F_0 / |1 + alpha F_0|^2
/// to 1e-12 and throws ConvergenceError if that identity fails.
[[nodiscard]] std::complex<double> F_alpha(const DiscreteMeasure& mu, double alpha, std::complex<double> z);

/// pi^{-1} Im log(1 + alpha F_0(lambda + i eps)), principal branch.
[[nodiscard]] double xi_alpha(const DiscreteMeasure& mu, double alpha, double lambda, double eps);

/// Exact xi(.; A_0 + alpha f f^T, A_0) for A_0 = diag(atoms), f = sqrt(weights).
[[nodiscard]] StepFunction matrix_oracle(const DiscreteMeasure& mu, double alpha);

enum class SpectralLabel { ac_support, sc_candidate, pp_candidate, none };
[[nodiscard]] std::string to_string(SpectralLabel l);

struct RootInfo {
  double location = 0.0;
  double g0 = 0.0;      // int dmu / (x - lambda)^2
  double weight = 0.0;  // point mass of the perturbed measure, 1 / (alpha^2 G_0)
  bool g0_divergent = false;
  /// |F_0(lambda + i eps) + 1/alpha| for each probe eps, in probe order.
  std::vector<double> probe_residuals;
};

struct SpectralTypeReport {
  double alpha = 0.0;
  std::vector<double> grid;
  std::vector<SpectralLabel> membership;
  std::vector<RootInfo> eigenvalues;
  std::vector<double> eps_probes;
};

[[nodiscard]] std::vector<double> default_eps_probes();

/// Per-point labels and the roots of F_0 = -1/alpha. Roots are solved by
/// bisection on each gap between consecutive atoms (and right of the last
/// atom), where F_0 is strictly increasing; measures with a density report no
/// roots. G_0 above 1e12 counts as divergent.
[[nodiscard]] SpectralTypeReport classify_spectral_type(const DiscreteMeasure& mu, double alpha,
                                                        std::span<const double> grid,
                                                        std::span<const double> eps_probes);

struct PrescribedSsfReport {
  std::vector<double> z_values;           // -10^{-k}
  std::vector<double> index_sequence;     // (1/2) Re T(xi_0)(z)
  double index_estimate = 0.0;            // value at the smallest |z|
  std::optional<double> right_value;      // Lebesgue values of xi_0 at 0
  std::optional<double> left_value;
  std::vector<double> recovery_grid;
  std::vector<double> prescribed;         // xi_0 on the grid
  std::vector<double> recovered;          // arg(1 + alpha F_0)(lambda + i eps) / pi
  double recovery_eps = 0.0;
};

/// Realizes xi_0 (compactly supported, 0 <= xi_0 <= 1) as the boundary phase
/// of exp(int xi_0(x) dx / (x - z)) = 1 + alpha F_0(z), recovers it on a
/// grid, and evaluates [xi_0(0+) + xi_0(0-)]/2 through T at z = -10^{-k}.
[[nodiscard]] PrescribedSsfReport prescribed_ssf_demo(const ScalarFunction& xi0,
                                                      std::span<const double> recovery_grid,
                                                      double recovery_eps = 1e-6, int max_k = 6,
                                                      const TransformSettings& s = {});

}  // namespace wittenlab
