#pragma once

// Run configuration for the wittenlab tool, loaded from YAML.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wittenlab/linalg.hpp"
#include "wittenlab/model.hpp"
#include "wittenlab/profile.hpp"
#include "wittenlab/rankone.hpp"
#include "wittenlab/transforms.hpp"
#include "wittenlab/witten.hpp"

namespace wittenlab::cli {

/// A config problem; `field` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct PathSpec {
  SymMatrix a_minus{1};
  SymMatrix b_plus{1};
  ProfileKind profile = ProfileKind::logistic;
  std::vector<double> profile_t;  // custom-sampled only
  std::vector<double> profile_s;

  [[nodiscard]] Profile make_profile() const;
  [[nodiscard]] OperatorPath make_path() const;
};

struct GridSpec {
  std::vector<Resolution> resolutions = default_resolutions();
  std::vector<double> lambda_schedule;  // empty: per-resolution defaults
  std::vector<double> t_schedule;
  double bulk_fraction = 0.5;
  PlateauSettings plateau;
};

struct OutputSpec {
  std::string directory = "out";
  bool csv = true;
  bool json = true;
};

struct LinearGrid {
  double from = 0.0;
  double to = 1.0;
  std::size_t points = 101;

  [[nodiscard]] std::vector<double> values() const;
};

struct SsfSpec {
  double eps = 1e-5;
  LinearGrid grid{-3.0, 3.0, 121};
  std::size_t random_pairs = 0;  // seeded quantization suite when > 0
  std::size_t random_max_dim = 4;
};

/// Input of `pushnitski`: an indicator of (a, b), or xi(.; A_plus, A_minus)
/// from the path section.
struct PushnitskiSpec {
  std::string source = "indicator";  // "indicator" or "path"
  double a = -1.0;
  double b = 1.0;
  LinearGrid lambda{0.01, 4.0, 200};
};

struct AbelSpec {
  std::string f = "resolvent";  // "resolvent" (lambda - z)^{-1} or "heat" e^{-s lambda}
  double z = -1.0;
  double s = 1.0;
  LinearGrid nu{-5.0, 5.0, 101};
};

struct RankOneSpec {
  std::vector<Atom> atoms;
  std::vector<double> alphas = {0.1, 1.0, 10.0};
  double eps = 1e-6;
  LinearGrid grid{-5.0, 5.0, 201};
};

struct TraceCheckSpec {
  Resolution resolution{40.0, 2001};
  std::vector<double> z = {-1.0, -0.25, -4.0};
  std::vector<double> heat_s = {1.0};
};

struct RunConfig {
  std::optional<PathSpec> path;
  GridSpec grid;
  TransformSettings transform;
  OutputSpec output;
  std::uint64_t seed = 0;
  double fredholm_tol = 1e-8;
  double kernel_tol = 1e-4;
  SsfSpec ssf;
  PushnitskiSpec pushnitski;
  AbelSpec abel;
  RankOneSpec rankone;
  TraceCheckSpec trace_check;
  std::string source_text;  // the YAML as read, echoed into the manifest
};

/// Parses and validates. Throws ConfigError naming the field.
[[nodiscard]] RunConfig parse_config(const std::string& yaml_text);
[[nodiscard]] RunConfig load_config(const std::string& file);

/// Path section or ConfigError("path", ...) when a command needs one.
[[nodiscard]] const PathSpec& require_path(const RunConfig& cfg);

}  // namespace wittenlab::cli
