#pragma once

// Dense real-symmetric and small complex linear algebra: the finite-dimensional
// layer every other module works in.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wittenlab {

using cplx = std::complex<double>;

/// Dense real symmetric matrix, row-major. The only mutator (`set`) writes
/// both triangles, so symmetry holds for every constructed value.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n);

  /// Build from explicit rows. Throws PreconditionError when the rows are not
  /// square or asymmetric beyond 1e-12 * max|entry|.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
  /// Row-major entries of an n x n matrix, validated like from_rows.
  static SymMatrix from_entries(std::size_t n, std::vector<double> entries);
  static SymMatrix diagonal(std::span<const double> diag);
  static SymMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }
  [[nodiscard]] std::span<const double> entries() const { return a_; }

  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double frobenius_norm() const;
  [[nodiscard]] double trace() const;
  [[nodiscard]] std::vector<std::vector<double>> rows() const;

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);

 private:
  SymMatrix(std::size_t n, std::vector<double> entries);

  std::size_t n_;
  std::vector<double> a_;
};

/// Spectral data of a symmetric matrix. Eigenvalues ascend; column k of the
/// row-major `vectors` array is the unit eigenvector paired with value k.
struct EigenDecomposition {
  std::vector<double> values;
  std::vector<double> vectors;

  [[nodiscard]] std::size_t size() const { return values.size(); }
  [[nodiscard]] double vector_entry(std::size_t row, std::size_t k) const {
    return vectors[row * values.size() + k];
  }
  [[nodiscard]] double spectral_radius() const;
};

/// Cyclic Jacobi eigensolver. Converges when the off-diagonal Frobenius norm
/// drops below 1e-13 * ||A||_F; throws ConvergenceError after 100 sweeps.
[[nodiscard]] EigenDecomposition eigh(const SymMatrix& a);

/// max |A V - V diag(mu)|, the reconstruction residual used by the tests.
[[nodiscard]] double reconstruction_residual(const SymMatrix& a, const EigenDecomposition& e);
/// max |V^T V - I|.
[[nodiscard]] double orthogonality_residual(const EigenDecomposition& e);

/// V diag(f(mu)) V^T. Throws PreconditionError when f is not finite on some
/// eigenvalue.
[[nodiscard]] SymMatrix matrix_function(const EigenDecomposition& e,
                                        const std::function<double(double)>& f);

/// tr f(A) for a complex-valued scalar map; only eigenvalues are needed.
[[nodiscard]] cplx trace_function(const EigenDecomposition& e,
                                  const std::function<cplx(double)>& f);

/// Number of eigenvalues strictly below lambda.
[[nodiscard]] std::size_t count_below(const EigenDecomposition& e, double lambda);

struct SignedCounts {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

/// Eigenvalues above zero_tol, below -zero_tol, and the rest.
[[nodiscard]] SignedCounts signed_counts(const EigenDecomposition& e, double zero_tol);

/// 1e-8 * (1 + max|A|), the default tolerance for signed_counts.
[[nodiscard]] double default_zero_tol(const SymMatrix& a);

/// Small dense complex matrix, row-major.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}
  ComplexMatrix(std::size_t n, std::vector<cplx> entries);

  [[nodiscard]] std::size_t size() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  [[nodiscard]] cplx operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<cplx> a_;
};

/// Determinant by LU with partial pivoting.
[[nodiscard]] cplx determinant(ComplexMatrix m);

/// log of a complex number with a continuously tracked argument.
struct BranchedLogValue {
  double modulus_log = 0.0;
  double argument = 0.0;

  [[nodiscard]] cplx value() const;
};

/// Largest principal-argument increment accepted between consecutive samples.
inline constexpr double kMaxArgumentStep = 1.5707963267948966;

/// Unwrap the argument of a sequence of nonzero complex values. The first
/// argument is the representative of arg(values[0]) closest to `anchor`.
/// Throws ConvergenceError on a vanishing value or on a principal increment
/// above kMaxArgumentStep.
[[nodiscard]] std::vector<BranchedLogValue> logdet_tracked(std::span<const cplx> values,
                                                           double anchor = 0.0);

/// Same, taking matrices sampled along a path and tracking ln det.
[[nodiscard]] std::vector<BranchedLogValue> logdet_tracked(std::span<const ComplexMatrix> path,
                                                           double anchor = 0.0);

}  // namespace wittenlab
