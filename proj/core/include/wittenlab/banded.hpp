#pragma once

// Symmetric band matrices and their eigensolver. The discretized H1/H2 are
// block tridiagonal, so they are stored and diagonalized in band form.

#include <cstddef>
#include <span>
#include <vector>

#include "wittenlab/linalg.hpp"

namespace wittenlab {

/// Symmetric matrix with bandwidth kd, kept in LAPACK upper band storage
/// (column-major, ab[kd + i - j + j*(kd+1)] holds entry (i, j) for i <= j).
class BandedSymMatrix {
 public:
  BandedSymMatrix(std::size_t n, std::size_t kd);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::size_t bandwidth() const { return kd_; }

  /// Entry (i, j); zero outside the band.
  [[nodiscard]] double at(std::size_t i, std::size_t j) const;
  /// Set entry (i, j) and, implicitly, (j, i). Throws outside the band.
  void set(std::size_t i, std::size_t j, double v);
  void add(std::size_t i, std::size_t j, double v);

  [[nodiscard]] double trace() const;
  [[nodiscard]] SymMatrix to_dense() const;
  [[nodiscard]] const std::vector<double>& storage() const { return ab_; }

 private:
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t n_;
  std::size_t kd_;
  std::vector<double> ab_;
};

/// Full eigendecomposition of a band matrix (band reduction followed by MRRR).
[[nodiscard]] EigenDecomposition eigh_banded(const BandedSymMatrix& m);

/// Eigenvalues together with a weighted eigenvector mass per eigenvalue,
/// mass_k = sum_r row_weights[r] * V(r, k)^2. Eigenvectors are not retained.
struct WeightedSpectrum {
  std::vector<double> values;
  std::vector<double> weights;
};

[[nodiscard]] WeightedSpectrum eigh_banded_weighted(const BandedSymMatrix& m,
                                                    std::span<const double> row_weights);

}  // namespace wittenlab
