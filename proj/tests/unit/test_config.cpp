#include <doctest.h>

#include <string>

#include "config.hpp"

using namespace wittenlab;
using namespace wittenlab::cli;

namespace {

std::string error_field(const std::string& yaml) {
  try {
    (void)parse_config(yaml);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("a minimal path config") {
  const auto cfg = parse_config("path:\n  A_minus: [[-1.0]]\n  B_plus: [[2.0]]\n");
  REQUIRE(cfg.path.has_value());
  CHECK(cfg.path->a_minus(0, 0) == -1.0);
  CHECK(cfg.path->profile == ProfileKind::logistic);
  CHECK(cfg.grid.resolutions.size() == default_resolutions().size());
  CHECK(cfg.output.directory == "out");
  const auto path = cfg.path->make_path();
  CHECK(path.a_plus()(0, 0) == 1.0);
}

TEST_CASE("full config") {
  const auto cfg = parse_config(R"(
path:
  dim: 2
  A_minus: [[-1, 0], [0, -1]]
  B_plus: [[2, 0], [0, 1]]
  profile: tanh_rescaled
grid:
  resolutions: [[20, 1001], [40, 2001]]
  lambda_schedule: [-0.07, -0.1, -0.2]
  t_schedule: [15, 10, 5]
  plateau_tol: 0.03
  richardson_order: 2
output:
  directory: somewhere
  formats: [json]
seed: 42
abel: {f: heat, s: 2.0}
)");
  CHECK(cfg.path->a_minus.size() == 2);
  CHECK(cfg.path->profile == ProfileKind::tanh_rescaled);
  CHECK(cfg.grid.lambda_schedule.size() == 3);
  CHECK(cfg.grid.plateau.tol == 0.03);
  CHECK(cfg.grid.plateau.richardson_order == 2);
  CHECK(cfg.output.directory == "somewhere");
  CHECK_FALSE(cfg.output.csv);
  CHECK(cfg.output.json);
  CHECK(cfg.seed == 42);
  CHECK(cfg.abel.f == "heat");
  CHECK(cfg.abel.s == 2.0);
}

TEST_CASE("errors name the offending field") {
  CHECK(error_field("path:\n  A_minus: [[-1.0, 0.0], [0.0]]\n  B_plus: [[2, 0], [0, 1]]\n") == "path.A_minus[1]");
  CHECK(error_field("path:\n  A_minus: [[1, 2], [3, 1]]\n  B_plus: [[2, 0], [0, 1]]\n") == "path.A_minus");
  CHECK(error_field("path:\n  A_minus: [[1]]\n  B_plus: [[2, 0], [0, 1]]\n") == "path.B_plus");
  CHECK(error_field("path:\n  dim: 2\n  A_minus: [[1]]\n  B_plus: [[2]]\n") == "path.dim");
  CHECK(error_field("path:\n  A_minus: [[1]]\n  B_plus: [[2]]\n  profile: erf\n") == "path.profile");
  CHECK(error_field("path:\n  B_plus: [[2]]\n") == "path.A_minus");
  CHECK(error_field("colour: blue\n") == "colour");
  CHECK(error_field("grid:\n  resolutions: [[20, 1000]]\n") == "grid.resolutions[0].N");
  CHECK(error_field("grid:\n  resolutions: [[20, 1001]]\n  lambda_schedule: [-0.01, -0.1, -1]\n") ==
        "grid.lambda_schedule[0]");
  CHECK(error_field("grid:\n  resolutions: [[20, 1001]]\n  t_schedule: [100, 10, 1]\n") == "grid.t_schedule[0]");
  CHECK(error_field("abel:\n  z: 1.0\n") == "abel.z");
  CHECK(error_field("output:\n  formats: [xml]\n") == "output.formats[0]");
  CHECK(error_field("seed: -3\n") == "seed");
}

TEST_CASE("commands that need a path say so") {
  const auto cfg = parse_config("seed: 1\n");
  CHECK_THROWS_AS((void)require_path(cfg), ConfigError);
}
