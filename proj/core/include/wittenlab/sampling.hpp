#pragma once

// Seeded random symmetric matrices for randomized suites.

#include <cstddef>
#include <random>

#include "wittenlab/linalg.hpp"

namespace wittenlab {

/// Q diag(mu) Q^T with Q Haar-like orthogonal (Gram-Schmidt on a Gaussian
/// matrix) and |mu_i| uniform in [min_abs, max_abs] with random signs.
[[nodiscard]] SymMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, double min_abs,
                                         double max_abs);

/// Like random_symmetric but each eigenvalue is set to exactly 0 with
/// probability p_zero, which exercises the half-integer cases.
[[nodiscard]] SymMatrix random_symmetric_with_zeros(std::mt19937_64& rng, std::size_t n,
                                                    double min_abs, double max_abs, double p_zero);

}  // namespace wittenlab
