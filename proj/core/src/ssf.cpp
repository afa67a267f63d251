#include "wittenlab/ssf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wittenlab/error.hpp"

namespace wittenlab {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1) {
    throw PreconditionError("StepFunction: need exactly one more value than breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i])) throw PreconditionError("StepFunction: non-finite breakpoint");
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
      throw PreconditionError("StepFunction: breakpoints must be strictly increasing");
    }
  }
}

StepFunction StepFunction::from_jumps(double left_tail, std::vector<std::pair<double, double>> jumps,
                                      double merge_tol) {
  std::sort(jumps.begin(), jumps.end());
  std::vector<double> bps;
  std::vector<double> vals{left_tail};
  std::size_t i = 0;
  double current = left_tail;
  while (i < jumps.size()) {
    const double start = jumps[i].first;
    double last = start;
    double loc_sum = 0.0;
    double jump = 0.0;
    std::size_t count = 0;
    while (i < jumps.size() && jumps[i].first - last <= merge_tol) {
      last = jumps[i].first;
      loc_sum += jumps[i].first;
      jump += jumps[i].second;
      ++count;
      ++i;
    }
    if (jump == 0.0) continue;
    double loc = loc_sum / static_cast<double>(count);
    if (!bps.empty() && loc <= bps.back()) loc = std::nextafter(bps.back(), INFINITY);
    current += jump;
    bps.push_back(loc);
    vals.push_back(current);
  }
  return StepFunction(std::move(bps), std::move(vals));
}

double StepFunction::value_at(double x) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

std::pair<double, double> StepFunction::left_right_at(double nu, double tol) const {
  const auto lo = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), nu - tol);
  const auto hi = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), nu + tol);
  return {values_[static_cast<std::size_t>(lo - breakpoints_.begin())],
          values_[static_cast<std::size_t>(hi - breakpoints_.begin())]};
}

double StepFunction::integral() const {
  if (values_.front() != 0.0 || values_.back() != 0.0) {
    throw PreconditionError("StepFunction::integral: nonzero tail, integral diverges");
  }
  double s = 0.0;
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    s += values_[i] * (breakpoints_[i] - breakpoints_[i - 1]);
  }
  return s;
}

StepFunction StepFunction::operator-() const {
  std::vector<double> v(values_);
  for (double& x : v) x = -x;
  return StepFunction(breakpoints_, std::move(v));
}

void SampledFunction::validate() const {
  if (abscissae.size() != ordinates.size()) {
    throw PreconditionError("SampledFunction: abscissae and ordinates differ in length");
  }
  for (std::size_t i = 1; i < abscissae.size(); ++i) {
    if (!(abscissae[i] > abscissae[i - 1])) {
      throw PreconditionError("SampledFunction: abscissae must be strictly increasing");
    }
  }
}

StepFunction ssf_pair(const SymMatrix& a_plus, const SymMatrix& a_minus) {
  if (a_plus.size() != a_minus.size()) throw PreconditionError("ssf_pair: dimension mismatch");
  const EigenDecomposition ep = eigh(a_plus);
  const EigenDecomposition em = eigh(a_minus);
  std::vector<std::pair<double, double>> jumps;
  jumps.reserve(2 * ep.size());
  for (double mu : em.values) jumps.emplace_back(mu, 1.0);
  for (double mu : ep.values) jumps.emplace_back(mu, -1.0);
  return StepFunction::from_jumps(0.0, std::move(jumps), kBreakpointMergeTol);
}

std::pair<double, double> xi_left_right_at(const StepFunction& xi, double nu, double tol) {
  return xi.left_right_at(nu, tol);
}

namespace {

ComplexMatrix perturbation_matrix(const SymMatrix& b, const EigenDecomposition& em, cplx z) {
  const std::size_t n = b.size();
  std::vector<cplx> inv_diag(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx d = em.values[k] - z;
    if (std::abs(d) <= 1e-12) {
      throw PreconditionError("perturbation_determinant: z hits an eigenvalue of A_minus");
    }
    inv_diag[k] = 1.0 / d;
  }
  // R = V diag(1/(mu - z)) V^T, then M = I + B R.
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += em.vector_entry(i, k) * inv_diag[k] * em.vector_entry(j, k);
      r(i, j) = s;
    }
  }
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = (i == j) ? cplx(1.0) : cplx(0.0);
      for (std::size_t k = 0; k < n; ++k) s += b(i, k) * r(k, j);
      m(i, j) = s;
    }
  }
  return m;
}

constexpr double kTrackStep = std::numbers::pi / 4.0;
constexpr int kMaxBisectionDepth = 64;

// Appends samples of d along the parameter segment (s0, s1], refining until
// consecutive principal argument increments stay below pi/4.
template <class F>
void refine_segment(const F& d, double s0, double s1, cplx d0, cplx d1, int depth,
                    std::vector<cplx>& out) {
  if (std::abs(std::arg(d1 / d0)) < kTrackStep) {
    out.push_back(d1);
    return;
  }
  if (depth >= kMaxBisectionDepth) {
    throw ConvergenceError("ssf_via_logdet: branch tracking could not resolve the path");
  }
  const double sm = 0.5 * (s0 + s1);
  const cplx dm = d(sm);
  refine_segment(d, s0, sm, d0, dm, depth + 1, out);
  refine_segment(d, sm, s1, dm, d1, depth + 1, out);
}

}  // namespace

cplx perturbation_determinant(const SymMatrix& a_plus, const SymMatrix& a_minus, cplx z) {
  if (a_plus.size() != a_minus.size()) throw PreconditionError("perturbation_determinant: dimension mismatch");
  const EigenDecomposition em = eigh(a_minus);
  return determinant(perturbation_matrix(a_plus - a_minus, em, z));
}

SampledFunction ssf_via_logdet(const SymMatrix& a_plus, const SymMatrix& a_minus, double eps,
                               std::span<const double> grid) {
  if (a_plus.size() != a_minus.size()) throw PreconditionError("ssf_via_logdet: dimension mismatch");
  if (!(eps > 0.0)) throw PreconditionError("ssf_via_logdet: eps must be positive");
  SampledFunction out;
  out.abscissae.assign(grid.begin(), grid.end());
  out.metadata["eps"] = eps;
  if (grid.empty()) return out;

  const SymMatrix b = a_plus - a_minus;
  const EigenDecomposition em = eigh(a_minus);
  const EigenDecomposition ep = eigh(a_plus);
  const double rho = std::max(em.spectral_radius(), ep.spectral_radius());
  const double n = static_cast<double>(a_plus.size());
  const double y_top = 10.0 * n * (1.0 + rho);
  out.metadata["anchor_height"] = y_top;

  auto det_at = [&](cplx z) { return determinant(perturbation_matrix(b, em, z)); };

  // Vertical leg, parametrized by log(height).
  const double lam0 = grid.front();
  std::vector<cplx> samples;
  const cplx top = det_at(cplx(lam0, y_top));
  if (std::abs(std::arg(top)) >= 0.25) {
    throw ConvergenceError("ssf_via_logdet: anchor argument not small at the top of the path");
  }
  samples.push_back(top);
  auto vertical = [&](double s) { return det_at(cplx(lam0, std::exp(s))); };
  const double s_top = std::log(y_top);
  const double s_bot = std::log(eps);
  const int coarse = std::max(8, static_cast<int>(std::ceil((s_top - s_bot) / 0.5)));
  double s_prev = s_top;
  for (int k = 1; k <= coarse; ++k) {
    const double s = s_top + (s_bot - s_top) * k / coarse;
    const cplx d_prev = samples.back();
    refine_segment(vertical, s_prev, s, d_prev, vertical(s), 0, samples);
    s_prev = s;
  }
  std::vector<std::size_t> grid_index{samples.size() - 1};

  // Horizontal leg through the grid at height eps.
  auto horizontal = [&](double x) { return det_at(cplx(x, eps)); };
  for (std::size_t g = 1; g < grid.size(); ++g) {
    refine_segment(horizontal, grid[g - 1], grid[g], samples.back(), horizontal(grid[g]), 0, samples);
    grid_index.push_back(samples.size() - 1);
  }

  const std::vector<BranchedLogValue> logs = logdet_tracked(std::span<const cplx>(samples), 0.0);
  out.ordinates.reserve(grid.size());
  for (std::size_t idx : grid_index) out.ordinates.push_back(logs[idx].argument / std::numbers::pi);
  out.validate();
  out.metadata["path_samples"] = static_cast<double>(samples.size());
  return out;
}

Rational index_counting(const SymMatrix& a_plus, const SymMatrix& a_minus, double zero_tol) {
  if (a_plus.size() != a_minus.size()) throw PreconditionError("index_counting: dimension mismatch");
  const SignedCounts cp = signed_counts(eigh(a_plus), zero_tol);
  const SignedCounts cm = signed_counts(eigh(a_minus), zero_tol);
  const auto pos = static_cast<std::int64_t>(cp.positive) - static_cast<std::int64_t>(cm.positive);
  const auto neg = static_cast<std::int64_t>(cp.negative) - static_cast<std::int64_t>(cm.negative);
  return Rational(pos - neg, 2);
}

}  // namespace wittenlab
