#pragma once

// The model operator D_A = d/dt + A(t): operator paths, their grid
// truncation, and the regularized index functionals built on H1 = D^T D and
// H2 = D D^T.

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "wittenlab/banded.hpp"
#include "wittenlab/linalg.hpp"
#include "wittenlab/profile.hpp"
#include "wittenlab/ssf.hpp"

namespace wittenlab {

/// A(t) = A_minus + s(t) B_plus.
class OperatorPath {
 public:
  OperatorPath(SymMatrix a_minus, SymMatrix b_plus, Profile profile);

  [[nodiscard]] std::size_t dim() const { return a_minus_.size(); }
  [[nodiscard]] const SymMatrix& a_minus() const { return a_minus_; }
  [[nodiscard]] const SymMatrix& b_plus() const { return b_plus_; }
  [[nodiscard]] const SymMatrix& a_plus() const { return a_plus_; }
  [[nodiscard]] const Profile& profile() const { return profile_; }

  [[nodiscard]] SymMatrix at(double t) const;
  [[nodiscard]] SymMatrix derivative_at(double t) const;
  /// Numerical value of the integral of |s'(t)| ||B_plus|| over the line.
  [[nodiscard]] double variation() const { return variation_; }

  /// The time-reflected path t -> A(-t): asymptotes swapped, B_plus negated.
  /// Only available for profiles with s(-t) = 1 - s(t) (logistic, tanh_rescaled).
  [[nodiscard]] OperatorPath reversed() const;

 private:
  SymMatrix a_minus_;
  SymMatrix b_plus_;
  SymMatrix a_plus_;
  Profile profile_;
  double variation_ = 0.0;
};

/// Validates the profile limits |s(-50)|, |s(50) - 1| <= 1e-8, monotonicity
/// and finiteness of the variation. Throws PreconditionError otherwise.
[[nodiscard]] OperatorPath build_path(const SymMatrix& a_minus, const SymMatrix& b_plus,
                                      const Profile& profile);

struct DiscretizeOptions {
  /// Half-width of the trace window as a fraction of L.
  double bulk_fraction = 0.5;
  /// Cap on N * n; 0 means the default (6000, or WITTENLAB_MAX_DIM if set).
  std::size_t max_dim = 0;
};

/// Default N * n cap, honoring the WITTENLAB_MAX_DIM environment variable.
[[nodiscard]] std::size_t default_max_dim();

/// Box-scheme truncation on t_k = -L + k h, h = 2L/(N-1), k = 0..N-1:
///   (D u)_k = (u_{k+1} - u_k)/h + A(t_k + h/2)(u_k + u_{k+1})/2,  u_N = 0.
/// D is block upper bidiagonal with symmetric blocks
///   Dd_k = -I/h + A_k/2,  Du_k = I/h + A_k/2,  A_k = A(t_k + h/2).
/// Both H1 and H2 are diagonalized at construction. Traces are localized to
/// |t| <= bulk_fraction * L using the eigenvector mass in that window (H1
/// rows live on nodes, H2 rows on midpoints); edge modes pinned to the
/// Dirichlet walls carry almost no mass there.
class DiscretizedModel {
 public:
  DiscretizedModel(OperatorPath path, double L, std::size_t N, DiscretizeOptions opts = {});

  [[nodiscard]] const OperatorPath& path() const { return path_; }
  [[nodiscard]] double L() const { return L_; }
  [[nodiscard]] std::size_t N() const { return N_; }
  [[nodiscard]] double h() const { return h_; }
  [[nodiscard]] std::size_t dim() const { return N_ * path_.dim(); }
  [[nodiscard]] double bulk_fraction() const { return bulk_fraction_; }
  [[nodiscard]] double node(std::size_t k) const { return -L_ + static_cast<double>(k) * h_; }

  [[nodiscard]] const SymMatrix& diag_block(std::size_t k) const { return dd_[k]; }
  [[nodiscard]] const SymMatrix& upper_block(std::size_t k) const { return du_[k]; }
  /// Dense D as row-major (N n) x (N n); intended for small test problems.
  [[nodiscard]] std::vector<double> dense_D() const;

  [[nodiscard]] const BandedSymMatrix& H1() const { return h1_; }
  [[nodiscard]] const BandedSymMatrix& H2() const { return h2_; }
  [[nodiscard]] const WeightedSpectrum& spectrum_H1() const { return s1_; }
  [[nodiscard]] const WeightedSpectrum& spectrum_H2() const { return s2_; }
  [[nodiscard]] const std::vector<double>& window_H1() const { return chi1_; }
  [[nodiscard]] const std::vector<double>& window_H2() const { return chi2_; }

 private:
  OperatorPath path_;
  double L_;
  std::size_t N_;
  double h_;
  double bulk_fraction_;
  std::vector<SymMatrix> dd_;
  std::vector<SymMatrix> du_;
  BandedSymMatrix h1_;
  BandedSymMatrix h2_;
  std::vector<double> chi1_;
  std::vector<double> chi2_;
  WeightedSpectrum s1_;
  WeightedSpectrum s2_;
};

/// Throws PreconditionError for even N, N < 3, L <= 0; ResourceError when
/// N * n exceeds the cap.
[[nodiscard]] DiscretizedModel discretize(const OperatorPath& path, double L, std::size_t N,
                                          DiscretizeOptions opts = {});

/// (-lambda) tr chi[(H1 - lambda)^{-1} - (H2 - lambda)^{-1}], lambda < 0.
[[nodiscard]] double delta_r(const DiscretizedModel& m, double lambda);
/// tr chi[e^{-t H1} - e^{-t H2}], t > 0.
[[nodiscard]] double delta_s(const DiscretizedModel& m, double t);
/// d/dt of delta_s.
[[nodiscard]] double delta_s_derivative(const DiscretizedModel& m, double t);

struct TraceCheck {
  std::complex<double> lhs;
  std::complex<double> rhs;
  double rel_err = 0.0;  // absolute when rhs == 0
};

/// lhs = tr chi[(H2 - z)^{-1} - (H1 - z)^{-1}] from the discrete spectra;
/// rhs = (1/(2z)) tr(g_z(A_plus) - g_z(A_minus)), g_z(x) = x (x^2 - z)^{-1/2}.
[[nodiscard]] TraceCheck resolvent_trace_check(const DiscretizedModel& m, std::complex<double> z);

/// g_z(x) = x (x^2 - z)^{-1/2}, principal branch.
[[nodiscard]] std::complex<double> g_z(double x, std::complex<double> z);

struct FredholmDiagnosis {
  bool fredholm = false;
  double gap_plus = 0.0;
  double gap_minus = 0.0;
};

[[nodiscard]] FredholmDiagnosis fredholm_check(const OperatorPath& path, double tol);

/// Sorted union of the asymptote spectra (real parts of the vertical lines in
/// the essential spectrum of D_A).
[[nodiscard]] std::vector<double> essential_spectrum_strips(const OperatorPath& path);

/// Eigenvalues below tol whose windowed mass exceeds 1/2, for H1 and H2.
[[nodiscard]] std::pair<std::size_t, std::size_t> kernel_dims(const DiscretizedModel& m, double tol);

/// Windowed counting function #chi(H1 < lambda) - #chi(H2 < lambda) as an
/// exact step function.
[[nodiscard]] StepFunction ssf_H_step(const DiscretizedModel& m);

/// ssf_H_step sampled on a positive increasing grid (left limits, i.e. strict
/// counts below each lambda).
[[nodiscard]] SampledFunction ssf_H_discrete(const DiscretizedModel& m, std::span<const double> grid);

/// Weighted spectral sum sum_i w_i f(mu_i) of one operator.
template <class F>
[[nodiscard]] auto windowed_trace(const WeightedSpectrum& s, F f) {
  decltype(f(0.0)) acc{};
  for (std::size_t i = 0; i < s.values.size(); ++i) acc += s.weights[i] * f(s.values[i]);
  return acc;
}

/// Paired difference sum_i [w1_i f(mu1_i) - w2_i f(mu2_i)] over ascending
/// spectra of H1 and H2, accumulated term by term.
template <class F>
[[nodiscard]] auto windowed_trace_difference(const DiscretizedModel& m, F f) {
  const auto& a = m.spectrum_H1();
  const auto& b = m.spectrum_H2();
  decltype(f(0.0)) acc{};
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    acc += a.weights[i] * f(a.values[i]) - b.weights[i] * f(b.values[i]);
  }
  return acc;
}

}  // namespace wittenlab
