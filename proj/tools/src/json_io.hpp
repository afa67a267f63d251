#pragma once

// JSON views of the library's result types.

#include <json.hpp>

#include "wittenlab/linalg.hpp"
#include "wittenlab/model.hpp"
#include "wittenlab/rankone.hpp"
#include "wittenlab/rational.hpp"
#include "wittenlab/transforms.hpp"
#include "wittenlab/witten.hpp"

namespace wittenlab::cli {

using json = nlohmann::ordered_json;

/// Non-finite values become null, which JSON cannot otherwise represent.
[[nodiscard]] json number(double x);

[[nodiscard]] json to_json(const Rational& r);
[[nodiscard]] json to_json(const FredholmDiagnosis& f);
[[nodiscard]] json to_json(const SignedCounts& c);
[[nodiscard]] json to_json(const RouteEstimate& r);
[[nodiscard]] json to_json(const ResolutionDiagnostics& d);
[[nodiscard]] json to_json(const WittenReport& r);
[[nodiscard]] json to_json(const TransformSettings& s);
[[nodiscard]] json to_json(const RootInfo& r);
[[nodiscard]] json to_json(const SymMatrix& m);

}  // namespace wittenlab::cli
