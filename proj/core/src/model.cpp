#include "wittenlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "wittenlab/error.hpp"

namespace wittenlab {

namespace {

constexpr double kProfileHorizon = 50.0;

// Row-major product of two n x n matrices given as SymMatrix blocks. The
// result need not be symmetric.
std::vector<double> product(const SymMatrix& a, const SymMatrix& b, bool transpose_b = false) {
  const std::size_t n = a.size();
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * (transpose_b ? b(j, k) : b(k, j));
    }
  return c;
}

double cell_overlap(double centre, double h, double lo, double hi) {
  const double w = std::min(centre + 0.5 * h, hi) - std::max(centre - 0.5 * h, lo);
  return std::max(w, 0.0) / h;
}

}  // namespace

OperatorPath::OperatorPath(SymMatrix a_minus, SymMatrix b_plus, Profile profile)
    : a_minus_(std::move(a_minus)),
      b_plus_(std::move(b_plus)),
      a_plus_(a_minus_ + b_plus_),
      profile_(std::move(profile)) {
  // Total variation of s on a fine grid over the horizon; monotone profiles
  // give exactly s(50) - s(-50).
  constexpr int kSamples = 20000;
  double var = 0.0;
  double prev = profile_.value(-kProfileHorizon);
  for (int k = 1; k <= kSamples; ++k) {
    const double t = -kProfileHorizon + 2.0 * kProfileHorizon * k / kSamples;
    const double s = profile_.value(t);
    var += std::abs(s - prev);
    prev = s;
  }
  variation_ = var * b_plus_.max_abs();
}

SymMatrix OperatorPath::at(double t) const { return a_minus_ + profile_.value(t) * b_plus_; }

SymMatrix OperatorPath::derivative_at(double t) const { return profile_.derivative(t) * b_plus_; }

OperatorPath OperatorPath::reversed() const {
  if (profile_.kind() == ProfileKind::custom_sampled) {
    throw PreconditionError("OperatorPath::reversed: custom profiles are not reflection symmetric");
  }
  return OperatorPath(a_plus_, -1.0 * b_plus_, profile_);
}

OperatorPath build_path(const SymMatrix& a_minus, const SymMatrix& b_plus, const Profile& profile) {
  if (a_minus.size() != b_plus.size()) throw PreconditionError("build_path: A_minus and B_plus differ in dimension");
  const double lo = profile.value(-kProfileHorizon);
  const double hi = profile.value(kProfileHorizon);
  if (std::abs(lo) > 1e-8 || std::abs(hi - 1.0) > 1e-8) {
    throw PreconditionError("build_path: profile limits must be 0 at t=-50 and 1 at t=+50 (got " +
                            std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  double prev = lo;
  for (int k = 1; k <= 4000; ++k) {
    const double s = profile.value(-kProfileHorizon + 0.025 * k);
    if (s < prev - 1e-12) throw PreconditionError("build_path: profile is not monotone");
    prev = s;
  }
  OperatorPath path(a_minus, b_plus, profile);
  if (!std::isfinite(path.variation())) throw PreconditionError("build_path: integrability check failed");
  return path;
}

std::size_t default_max_dim() {
  if (const char* env = std::getenv("WITTENLAB_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 6000;
}

DiscretizedModel::DiscretizedModel(OperatorPath path, double L, std::size_t N, DiscretizeOptions opts)
    : path_(std::move(path)),
      L_(L),
      N_(N),
      h_(2.0 * L / static_cast<double>(N - 1)),
      bulk_fraction_(opts.bulk_fraction),
      h1_(N * path_.dim(), 2 * path_.dim() - 1),
      h2_(N * path_.dim(), 2 * path_.dim() - 1) {
  const std::size_t n = path_.dim();
  dd_.reserve(N);
  du_.reserve(N);
  const SymMatrix id = SymMatrix::identity(n);
  for (std::size_t k = 0; k < N; ++k) {
    const SymMatrix a = path_.at(node(k) + 0.5 * h_);
    dd_.push_back(0.5 * a - (1.0 / h_) * id);
    du_.push_back(0.5 * a + (1.0 / h_) * id);
  }

  auto add_block = [n](BandedSymMatrix& m, std::size_t bi, std::size_t bj, const std::vector<double>& blk) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t i = bi * n + a;
        const std::size_t j = bj * n + b;
        if (i <= j) m.add(i, j, blk[a * n + b]);
      }
  };

  // H1 = D^T D: column blocks j collect Dd_j (row j) and Du_{j-1} (row j-1).
  for (std::size_t j = 0; j < N; ++j) {
    add_block(h1_, j, j, product(dd_[j], dd_[j], true));
    if (j > 0) add_block(h1_, j, j, product(du_[j - 1], du_[j - 1], true));
    if (j + 1 < N) add_block(h1_, j, j + 1, product(dd_[j], du_[j]));
  }
  // H2 = D D^T: row k holds Dd_k and, except for the last row, Du_k.
  for (std::size_t k = 0; k < N; ++k) {
    add_block(h2_, k, k, product(dd_[k], dd_[k], true));
    if (k + 1 < N) {
      add_block(h2_, k, k, product(du_[k], du_[k], true));
      add_block(h2_, k, k + 1, product(du_[k], dd_[k + 1], true));
    }
  }

  const double half = bulk_fraction_ * L_;
  chi1_.resize(N * n);
  chi2_.resize(N * n);
  for (std::size_t k = 0; k < N; ++k) {
    const double w1 = cell_overlap(node(k), h_, -half, half);
    const double w2 = cell_overlap(node(k) + 0.5 * h_, h_, -half, half);
    for (std::size_t a = 0; a < n; ++a) {
      chi1_[k * n + a] = w1;
      chi2_[k * n + a] = w2;
    }
  }
  s1_ = eigh_banded_weighted(h1_, chi1_);
  s2_ = eigh_banded_weighted(h2_, chi2_);
}

std::vector<double> DiscretizedModel::dense_D() const {
  const std::size_t n = path_.dim();
  const std::size_t dim = N_ * n;
  std::vector<double> d(dim * dim, 0.0);
  for (std::size_t k = 0; k < N_; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        d[(k * n + a) * dim + k * n + b] = dd_[k](a, b);
        if (k + 1 < N_) d[(k * n + a) * dim + (k + 1) * n + b] = du_[k](a, b);
      }
  return d;
}

DiscretizedModel discretize(const OperatorPath& path, double L, std::size_t N, DiscretizeOptions opts) {
  if (N < 3 || N % 2 == 0) throw PreconditionError("discretize: N must be odd and at least 3");
  if (!(L > 0.0) || !std::isfinite(L)) throw PreconditionError("discretize: L must be positive");
  if (!(opts.bulk_fraction > 0.0 && opts.bulk_fraction <= 1.0)) {
    throw PreconditionError("discretize: bulk_fraction must lie in (0, 1]");
  }
  const std::size_t cap = opts.max_dim ? opts.max_dim : default_max_dim();
  if (N * path.dim() > cap) {
    throw ResourceError("discretize: N*n = " + std::to_string(N * path.dim()) + " exceeds the cap " +
                        std::to_string(cap) + " (set WITTENLAB_MAX_DIM to raise it)");
  }
  return DiscretizedModel(path, L, N, opts);
}

double delta_r(const DiscretizedModel& m, double lambda) {
  if (!(lambda < 0.0)) throw PreconditionError("delta_r: lambda must be negative");
  return -lambda * windowed_trace_difference(m, [lambda](double mu) { return 1.0 / (mu - lambda); });
}

double delta_s(const DiscretizedModel& m, double t) {
  if (!(t > 0.0)) throw PreconditionError("delta_s: t must be positive");
  return windowed_trace_difference(m, [t](double mu) { return std::exp(-t * mu); });
}

double delta_s_derivative(const DiscretizedModel& m, double t) {
  if (!(t > 0.0)) throw PreconditionError("delta_s_derivative: t must be positive");
  return windowed_trace_difference(m, [t](double mu) { return -mu * std::exp(-t * mu); });
}

std::complex<double> g_z(double x, std::complex<double> z) { return x / std::sqrt(x * x - z); }

TraceCheck resolvent_trace_check(const DiscretizedModel& m, std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() >= 0.0) {
    throw PreconditionError("resolvent_trace_check: z must lie off [0, inf)");
  }
  TraceCheck out;
  out.lhs = -windowed_trace_difference(m, [z](double mu) { return 1.0 / (mu - z); });
  const auto ep = eigh(m.path().a_plus());
  const auto em = eigh(m.path().a_minus());
  const auto g = [z](double x) { return g_z(x, z); };
  out.rhs = (trace_function(ep, g) - trace_function(em, g)) / (2.0 * z);
  // Absolute error when the exact side vanishes (equal asymptotes).
  const double scale = std::abs(out.rhs);
  out.rel_err = std::abs(out.lhs - out.rhs) / (scale > 1e-14 ? scale : 1.0);
  return out;
}

FredholmDiagnosis fredholm_check(const OperatorPath& path, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("fredholm_check: tol must be positive");
  auto gap = [](const SymMatrix& a) {
    double g = INFINITY;
    for (double mu : eigh(a).values) g = std::min(g, std::abs(mu));
    return g;
  };
  FredholmDiagnosis d;
  d.gap_plus = gap(path.a_plus());
  d.gap_minus = gap(path.a_minus());
  d.fredholm = d.gap_plus > tol && d.gap_minus > tol;
  return d;
}

std::vector<double> essential_spectrum_strips(const OperatorPath& path) {
  std::vector<double> all = eigh(path.a_plus()).values;
  const auto em = eigh(path.a_minus()).values;
  all.insert(all.end(), em.begin(), em.end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double x : all) {
    if (out.empty() || x - out.back() > kBreakpointMergeTol) out.push_back(x);
  }
  return out;
}

std::pair<std::size_t, std::size_t> kernel_dims(const DiscretizedModel& m, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("kernel_dims: tol must be positive");
  auto count = [tol](const WeightedSpectrum& s) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < s.values.size() && s.values[i] < tol; ++i) {
      if (s.weights[i] > 0.5) ++c;
    }
    return c;
  };
  return {count(m.spectrum_H1()), count(m.spectrum_H2())};
}

StepFunction ssf_H_step(const DiscretizedModel& m) {
  std::vector<std::pair<double, double>> jumps;
  const auto& a = m.spectrum_H1();
  const auto& b = m.spectrum_H2();
  jumps.reserve(a.values.size() + b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) jumps.emplace_back(a.values[i], a.weights[i]);
  for (std::size_t i = 0; i < b.values.size(); ++i) jumps.emplace_back(b.values[i], -b.weights[i]);
  return StepFunction::from_jumps(0.0, std::move(jumps), 0.0);
}

SampledFunction ssf_H_discrete(const DiscretizedModel& m, std::span<const double> grid) {
  SampledFunction out;
  out.abscissae.assign(grid.begin(), grid.end());
  if (!grid.empty() && !(grid.front() > 0.0)) throw PreconditionError("ssf_H_discrete: grid must be positive");
  const StepFunction xi = ssf_H_step(m);
  out.ordinates.reserve(grid.size());
  for (double lam : grid) out.ordinates.push_back(xi.left_right_at(lam).first);
  out.validate();
  out.metadata["L"] = m.L();
  out.metadata["N"] = static_cast<double>(m.N());
  out.metadata["bulk_fraction"] = m.bulk_fraction();
  return out;
}

}  // namespace wittenlab
