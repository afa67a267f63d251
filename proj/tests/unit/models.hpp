#pragma once

// Canonical paths shared by the unit tests, and cached discretizations so the
// expensive eigendecompositions run once per test binary.

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "wittenlab/model.hpp"

namespace testing_models {

using namespace wittenlab;

inline SymMatrix diag(std::vector<double> d) { return SymMatrix::diagonal(d); }

/// A(t) = -1 + 2 s(t) = tanh(t/2); index 1.
inline OperatorPath tanh_path() { return build_path(diag({-1.0}), diag({2.0}), Profile::logistic()); }
/// A_minus = 0, A_plus = 1; index 1/2, not Fredholm.
inline OperatorPath half_path() { return build_path(diag({0.0}), diag({1.0}), Profile::tanh_rescaled()); }
/// A(t) = 0.
inline OperatorPath zero_path() { return build_path(diag({0.0}), diag({0.0}), Profile::logistic()); }
inline OperatorPath crossing_path() {
  return build_path(diag({-1.0, -1.0}), diag({2.0, 1.0}), Profile::logistic());
}

inline std::shared_ptr<const DiscretizedModel> shared(const std::string& name, double L, std::size_t N) {
  static std::map<std::tuple<std::string, double, std::size_t>, std::shared_ptr<const DiscretizedModel>> cache;
  auto& slot = cache[{name, L, N}];
  if (!slot) {
    OperatorPath p = name == "tanh"       ? tanh_path()
                     : name == "half"     ? half_path()
                     : name == "zero"     ? zero_path()
                     : name == "reversed" ? tanh_path().reversed()
                                          : crossing_path();
    slot = std::make_shared<const DiscretizedModel>(discretize(p, L, N));
  }
  return slot;
}

inline const DiscretizedModel& cached(const std::string& name, double L, std::size_t N) { return *shared(name, L, N); }

}  // namespace testing_models
