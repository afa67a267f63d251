#include "wittenlab/rankone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wittenlab/error.hpp"
#include "wittenlab/quadrature.hpp"

namespace wittenlab {

namespace {
using cplx_t = std::complex<double>;
constexpr double kG0Divergence = 1e12;
}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, std::vector<double> density_x,
                                 std::vector<double> density_y)
    : atoms_(std::move(atoms)), dx_(std::move(density_x)), dy_(std::move(density_y)) {
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!(atoms_[i].weight > 0.0) || !std::isfinite(atoms_[i].weight) || !std::isfinite(atoms_[i].location)) {
      throw PreconditionError("DiscreteMeasure: atom weights must be positive and finite");
    }
    if (i > 0 && atoms_[i].location == atoms_[i - 1].location) {
      throw PreconditionError("DiscreteMeasure: atom locations must be distinct");
    }
  }
  if (dx_.size() != dy_.size() || dx_.size() == 1) {
    throw PreconditionError("DiscreteMeasure: density needs matching x/y samples (at least two)");
  }
  for (std::size_t i = 0; i < dx_.size(); ++i) {
    if (dy_[i] < 0.0 || !std::isfinite(dy_[i])) throw PreconditionError("DiscreteMeasure: density must be non-negative");
    if (i > 0 && !(dx_[i] > dx_[i - 1])) throw PreconditionError("DiscreteMeasure: density grid must increase");
  }
}

double DiscreteMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  for (std::size_t i = 0; i + 1 < dx_.size(); ++i) m += 0.5 * (dy_[i] + dy_[i + 1]) * (dx_[i + 1] - dx_[i]);
  return m;
}

double DiscreteMeasure::density_at(double x) const {
  if (dx_.empty() || x <= dx_.front() || x >= dx_.back()) return 0.0;
  const auto it = std::upper_bound(dx_.begin(), dx_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - dx_.begin()) - 1;
  const double t = (x - dx_[i]) / (dx_[i + 1] - dx_[i]);
  return (1.0 - t) * dy_[i] + t * dy_[i + 1];
}

cplx_t borel_transform(const DiscreteMeasure& mu, cplx_t z) {
  if (z.imag() == 0.0) throw PreconditionError("borel_transform: z must be off the real axis");
  cplx_t f = 0.0;
  for (const auto& a : mu.atoms()) f += a.weight / (a.location - z);
  const auto& x = mu.density_x();
  const auto& y = mu.density_y();
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    // int (a + b t) / (t - z) dt = b (x1 - x0) + (a + b z) [log(x1 - z) - log(x0 - z)]
    const double b = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    const double a = y[i] - b * x[i];
    f += b * (x[i + 1] - x[i]) + (a + b * z) * (std::log(x[i + 1] - z) - std::log(x[i] - z));
  }
  return f;
}

cplx_t F_alpha(const DiscreteMeasure& mu, double alpha, cplx_t z) {
  const cplx_t f0 = borel_transform(mu, z);
  const cplx_t denom = 1.0 + alpha * f0;
  if (std::abs(denom) == 0.0) throw ConvergenceError("F_alpha: 1 + alpha F_0 vanishes off the real axis");
  const cplx_t fa = f0 / denom;
  const double im_identity = f0.imag() / std::norm(denom);
  if (std::abs(fa.imag() - im_identity) > 1e-12 * std::max(std::abs(fa), 1e-300) + 1e-300) {
    throw ConvergenceError("F_alpha: imaginary-part identity violated");
  }
  return fa;
}

double xi_alpha(const DiscreteMeasure& mu, double alpha, double lambda, double eps) {
  if (!(eps > 0.0)) throw PreconditionError("xi_alpha: eps must be positive");
  return std::arg(1.0 + alpha * borel_transform(mu, cplx_t(lambda, eps))) / std::numbers::pi;
}

StepFunction matrix_oracle(const DiscreteMeasure& mu, double alpha) {
  if (mu.atoms().empty() || mu.has_density()) {
    throw PreconditionError("matrix_oracle: needs a purely atomic measure with at least one atom");
  }
  const std::size_t m = mu.atoms().size();
  SymMatrix a0(m);
  SymMatrix aa(m);
  for (std::size_t i = 0; i < m; ++i) {
    a0.set(i, i, mu.atoms()[i].location);
    for (std::size_t j = i; j < m; ++j) {
      const double fij = std::sqrt(mu.atoms()[i].weight * mu.atoms()[j].weight);
      aa.set(i, j, (i == j ? mu.atoms()[i].location : 0.0) + alpha * fij);
    }
  }
  return ssf_pair(aa, a0);
}

std::string to_string(SpectralLabel l) {
  switch (l) {
    case SpectralLabel::ac_support:
      return "ac_support";
    case SpectralLabel::sc_candidate:
      return "sc_candidate";
    case SpectralLabel::pp_candidate:
      return "pp_candidate";
    case SpectralLabel::none:
      return "none";
  }
  return "none";
}

std::vector<double> default_eps_probes() { return {1e-2, 1e-4, 1e-6}; }

namespace {

double real_F0(const DiscreteMeasure& mu, double x) {
  double f = 0.0;
  for (const auto& a : mu.atoms()) f += a.weight / (a.location - x);
  return f;
}

double G0(const DiscreteMeasure& mu, double x) {
  double g = 0.0;
  for (const auto& a : mu.atoms()) {
    const double d = a.location - x;
    if (d == 0.0) return INFINITY;
    g += a.weight / (d * d);
    if (g > kG0Divergence) return g;
  }
  return g;
}

double bisect(const DiscreteMeasure& mu, double target, double lo, double hi) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (real_F0(mu, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SpectralTypeReport classify_spectral_type(const DiscreteMeasure& mu, double alpha, std::span<const double> grid,
                                          std::span<const double> eps_probes) {
  if (!(alpha > 0.0)) throw PreconditionError("classify_spectral_type: alpha must be positive");
  if (eps_probes.empty()) throw PreconditionError("classify_spectral_type: need at least one eps probe");
  SpectralTypeReport r;
  r.alpha = alpha;
  r.grid.assign(grid.begin(), grid.end());
  r.eps_probes.assign(eps_probes.begin(), eps_probes.end());

  const double target = -1.0 / alpha;
  if (!mu.has_density() && !mu.atoms().empty()) {
    const auto& at = mu.atoms();
    std::vector<double> roots;
    for (std::size_t j = 0; j + 1 < at.size(); ++j) roots.push_back(bisect(mu, target, at[j].location, at[j + 1].location));
    // Right of the last atom F_0 rises from -inf towards 0 from below.
    double span = 2.0 * alpha * mu.total_mass() + 1.0;
    while (real_F0(mu, at.back().location + span) < target) span *= 2.0;
    roots.push_back(bisect(mu, target, at.back().location, at.back().location + span));

    for (double x : roots) {
      RootInfo info;
      info.location = x;
      info.g0 = G0(mu, x);
      info.g0_divergent = info.g0 > kG0Divergence;
      info.weight = info.g0_divergent ? 0.0 : 1.0 / (alpha * alpha * info.g0);
      for (double e : eps_probes) info.probe_residuals.push_back(std::abs(borel_transform(mu, cplx_t(x, e)) - target));
      r.eigenvalues.push_back(info);
    }
  }

  r.membership.assign(grid.size(), SpectralLabel::none);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lo = i > 0 ? 0.5 * (grid[i] - grid[i - 1]) : (grid.size() > 1 ? 0.5 * (grid[1] - grid[0]) : 1e-8);
    const double hi = i + 1 < grid.size() ? 0.5 * (grid[i + 1] - grid[i]) : lo;
    bool labelled = false;
    for (const auto& root : r.eigenvalues) {
      if (root.location >= grid[i] - lo && root.location < grid[i] + hi) {
        r.membership[i] = root.g0_divergent ? SpectralLabel::sc_candidate : SpectralLabel::pp_candidate;
        labelled = true;
        break;
      }
    }
    if (labelled) continue;
    // Absolutely continuous support: Im F_0 settles to a finite positive limit.
    std::vector<double> im;
    for (double e : eps_probes) im.push_back(borel_transform(mu, cplx_t(grid[i], e)).imag());
    const double last = im.back();
    const double prev = im.size() > 1 ? im[im.size() - 2] : last;
    if (last > 1e-8 && last < 1e8 && std::abs(last - prev) <= 0.1 * last) r.membership[i] = SpectralLabel::ac_support;
  }
  return r;
}

PrescribedSsfReport prescribed_ssf_demo(const ScalarFunction& xi0, std::span<const double> recovery_grid,
                                        double recovery_eps, int max_k, const TransformSettings& s) {
  if (!xi0.support) throw PreconditionError("prescribed_ssf_demo: xi_0 must have compact support");
  if (!(recovery_eps > 0.0)) throw PreconditionError("prescribed_ssf_demo: recovery eps must be positive");
  const auto [a, b] = *xi0.support;
  for (int k = 0; k <= 2000; ++k) {
    const double x = a + (b - a) * k / 2000.0;
    const double v = xi0(x);
    if (!(v >= 0.0 && v <= 1.0)) throw PreconditionError("prescribed_ssf_demo: xi_0 must take values in [0, 1]");
  }

  PrescribedSsfReport r;
  r.recovery_eps = recovery_eps;
  for (int k = 1; k <= max_k; ++k) {
    const double z = -std::pow(10.0, -k);
    r.z_values.push_back(z);
    r.index_sequence.push_back(0.5 * op_T_complex(xi0, cplx_t(z, 0.0), s).real());
  }
  r.index_estimate = r.index_sequence.empty() ? 0.0 : r.index_sequence.back();

  const auto leb = lebesgue_classify(xi0, 0.0, default_lebesgue_h_sequence(), 1e-3, s);
  r.right_value = leb.right_value;
  r.left_value = leb.left_value;

  // Boundary phase of exp(int xi_0(x) dx / (x - z)) at z = lambda + i eps.
  const quad::Settings qs{s.de_tol, s.de_max_level};
  r.recovery_grid.assign(recovery_grid.begin(), recovery_grid.end());
  for (double lam : recovery_grid) {
    const cplx_t z(lam, recovery_eps);
    std::vector<double> cuts{a, b};
    for (double m : {1.0, 10.0, 100.0, 1e4}) {
      cuts.push_back(lam - m * recovery_eps);
      cuts.push_back(lam + m * recovery_eps);
    }
    cuts.push_back(lam);
    cuts.insert(cuts.end(), xi0.breakpoints.begin(), xi0.breakpoints.end());
    std::sort(cuts.begin(), cuts.end());
    cplx_t w = 0.0;
    double left = a;
    for (double c : cuts) {
      if (c <= left || c > b) continue;
      w += quad::tanh_sinh([&](double x) { return xi0(x) / (x - z); }, left, c, qs).value;
      left = c;
    }
    const cplx_t phi = std::exp(w);
    r.prescribed.push_back(xi0(lam));
    r.recovered.push_back(std::arg(phi) / std::numbers::pi);
  }
  return r;
}

}  // namespace wittenlab
