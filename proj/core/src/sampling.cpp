#include "wittenlab/sampling.hpp"

#include <cmath>
#include <vector>

#include "wittenlab/error.hpp"

namespace wittenlab {

namespace {

std::vector<double> random_orthogonal(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> q(n * n);  // column j at q[j*n .. j*n+n)
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    // Resample in the (measure zero) event of a dependent column.
    while (norm < 1e-8) {
      for (std::size_t i = 0; i < n; ++i) q[j * n + i] = gauss(rng);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += q[k * n + i] * q[j * n + i];
          for (std::size_t i = 0; i < n; ++i) q[j * n + i] -= dot * q[k * n + i];
        }
      }
      norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += q[j * n + i] * q[j * n + i];
      norm = std::sqrt(norm);
    }
    for (std::size_t i = 0; i < n; ++i) q[j * n + i] /= norm;
  }
  return q;
}

SymMatrix assemble(const std::vector<double>& q, const std::vector<double>& mu, std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q[k * n + r] * mu[k] * q[k * n + c];
      e[r * n + c] = s;
      e[c * n + r] = s;
    }
  }
  return SymMatrix::from_entries(n, std::move(e));
}

}  // namespace

SymMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, double min_abs, double max_abs) {
  return random_symmetric_with_zeros(rng, n, min_abs, max_abs, 0.0);
}

SymMatrix random_symmetric_with_zeros(std::mt19937_64& rng, std::size_t n, double min_abs,
                                      double max_abs, double p_zero) {
  if (n == 0) throw PreconditionError("random_symmetric: dimension must be positive");
  if (!(min_abs >= 0.0) || !(max_abs >= min_abs)) {
    throw PreconditionError("random_symmetric: need 0 <= min_abs <= max_abs");
  }
  std::uniform_real_distribution<double> mag(min_abs, max_abs);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> mu(n);
  for (auto& m : mu) {
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    m = sign * mag(rng);
    if (unit(rng) < p_zero) m = 0.0;
  }
  return assemble(random_orthogonal(rng, n), mu, n);
}

}  // namespace wittenlab
