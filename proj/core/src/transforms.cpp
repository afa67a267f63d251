#include "wittenlab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wittenlab/error.hpp"
#include "wittenlab/quadrature.hpp"

namespace wittenlab {

namespace {

using std::numbers::pi;

quad::Settings de_settings(const TransformSettings& s) { return {s.de_tol, s.de_max_level}; }

std::vector<double> sorted_unique(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

template <class T>
void check_tail(const quad::Result<T>& r, const char* who) {
  if (!std::isfinite(std::abs(r.value)) || r.tail > 1e-8 * std::max(1.0, std::abs(r.value))) {
    throw ConvergenceError(std::string(who) + ": integrand tail does not decay (divergent integral)");
  }
}

// Integral over [a, b] split at the given points that fall strictly inside.
template <class G>
auto integrate_interval(G g, double a, double b, const std::vector<double>& pts, const TransformSettings& s) {
  using T = decltype(g(0.0));
  T total{};
  if (!(b > a)) return total;
  double left = a;
  for (double p : pts) {
    if (p <= left || p >= b) continue;
    total += quad::tanh_sinh(g, left, p, de_settings(s)).value;
    left = p;
  }
  total += quad::tanh_sinh(g, left, b, de_settings(s)).value;
  return total;
}

// Integral over the whole line split at pts (sorted); tails by exp-sinh.
template <class G>
auto integrate_line(G g, std::vector<double> pts, const TransformSettings& s, const char* who) {
  pts = sorted_unique(std::move(pts));
  if (pts.empty()) pts.push_back(0.0);
  auto total = integrate_interval(g, pts.front(), pts.back(), pts, s);
  const double lo = pts.front();
  const double hi = pts.back();
  const auto right = quad::exp_sinh(g, hi, de_settings(s));
  const auto left = quad::exp_sinh([&](double y) { return g(lo - y); }, 0.0, de_settings(s));
  check_tail(right, who);
  check_tail(left, who);
  return total + right.value + left.value;
}

double checked(const ScalarFunction& f, double x, const char* who) {
  const double v = f(x);
  if (!std::isfinite(v)) throw PreconditionError(std::string(who) + ": non-finite function value");
  return v;
}

}  // namespace

ScalarFunction ScalarFunction::constant(double c) {
  return ScalarFunction{[c](double) { return c; }, {}, std::nullopt};
}

ScalarFunction ScalarFunction::indicator(double a, double b) {
  ScalarFunction f;
  f.eval = [a, b](double x) { return (x > a && x < b) ? 1.0 : 0.0; };
  if (std::isfinite(a)) f.breakpoints.push_back(a);
  if (std::isfinite(b)) f.breakpoints.push_back(b);
  if (std::isfinite(a) && std::isfinite(b)) f.support = std::make_pair(a, b);
  return f;
}

ScalarFunction ScalarFunction::from_step(const StepFunction& step) {
  ScalarFunction f;
  f.eval = [step](double x) { return step.value_at(x); };
  f.breakpoints = step.breakpoints();
  if (step.left_tail() == 0.0 && step.right_tail() == 0.0 && !step.breakpoints().empty()) {
    f.support = std::make_pair(step.breakpoints().front(), step.breakpoints().back());
  }
  return f;
}

double op_S(const ScalarFunction& f, double lambda, const TransformSettings& s) {
  if (!(lambda > 0.0)) throw PreconditionError("op_S: lambda must be positive");
  const double r = std::sqrt(lambda);
  std::vector<double> cuts{0.0, 0.5 * pi};
  for (double b : f.breakpoints) {
    if (b > 0.0 && b < r) cuts.push_back(std::asin(b / r));
  }
  cuts = sorted_unique(std::move(cuts));
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += quad::gauss_legendre_integrate(
        [&](double theta) { return checked(f, r * std::sin(theta), "op_S"); }, cuts[i], cuts[i + 1], s.gl_nodes);
  }
  return total / pi;
}

double pushnitski_at(const StepFunction& xi, double lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("pushnitski_forward: lambda must be positive");
  const double r = std::sqrt(lambda);
  auto g = [r](double nu) { return std::asin(std::clamp(nu / r, -1.0, 1.0)); };
  return xi.integrate_against_derivative(g, -r, r) / pi;
}

SampledFunction pushnitski_forward(const StepFunction& xi, std::span<const double> grid) {
  SampledFunction out;
  out.abscissae.assign(grid.begin(), grid.end());
  out.ordinates.reserve(grid.size());
  for (double lam : grid) out.ordinates.push_back(pushnitski_at(xi, lam));
  out.validate();
  return out;
}

double pushnitski_quadrature(const ScalarFunction& f, double lambda, const TransformSettings& s) {
  ScalarFunction sym;
  sym.eval = [&f](double nu) { return f(nu) + f(-nu); };
  for (double b : f.breakpoints) sym.breakpoints.push_back(std::abs(b));
  return op_S(sym, lambda, s);
}

double op_T(const ScalarFunction& f, double lambda, const TransformSettings& s) {
  if (!(lambda > 0.0)) throw PreconditionError("op_T: lambda must be positive");
  const double r = std::sqrt(lambda);
  std::vector<double> pts{0.0, r, -r};
  pts.insert(pts.end(), f.breakpoints.begin(), f.breakpoints.end());
  auto g = [&](double nu) {
    const double q = nu * nu + lambda;
    return checked(f, nu, "op_T") / (q * std::sqrt(q));
  };
  return lambda * integrate_line(g, std::move(pts), s, "op_T");
}

std::complex<double> op_T_complex(const ScalarFunction& f, std::complex<double> z, const TransformSettings& s) {
  if (z.imag() == 0.0 && z.real() >= 0.0) throw PreconditionError("op_T_complex: z lies on the cut [0, inf)");
  const double r = std::sqrt(std::abs(z));
  std::vector<double> pts{0.0, r, -r};
  pts.insert(pts.end(), f.breakpoints.begin(), f.breakpoints.end());
  auto g = [&](double nu) -> std::complex<double> {
    const std::complex<double> q = nu * nu - z;
    return checked(f, nu, "op_T_complex") / (q * std::sqrt(q));
  };
  return -z * integrate_line(g, std::move(pts), s, "op_T_complex");
}

namespace {

template <class G>
double half_line(G g, double split, const TransformSettings& s, const char* who) {
  const double a = quad::tanh_sinh(g, 0.0, split, de_settings(s)).value;
  const auto tail = quad::exp_sinh(g, split, de_settings(s));
  check_tail(tail, who);
  return a + tail.value;
}

}  // namespace

double abel_Fprime(const std::function<double(double)>& fprime, double nu, const TransformSettings& s) {
  const double nu2 = nu * nu;
  const double split = nu == 0.0 ? 1.0 : std::abs(nu);
  return 2.0 / pi * half_line([&](double u) { return fprime(u * u + nu2); }, split, s, "abel_Fprime");
}

double abel_F(const std::function<double(double)>& f, double nu, const TransformSettings& s) {
  if (nu == 0.0) return 0.0;
  const double nu2 = nu * nu;
  const double f0 = f(0.0);
  auto g = [&](double u) {
    const double x = u * u + nu2;
    return (f(x) - f0) / x;
  };
  return nu / pi * half_line(g, std::abs(nu), s, "abel_F");
}

TraceRelation trace_relation_check(const std::function<double(double)>& f, const DiscretizedModel& m,
                                   const TransformSettings& s) {
  TraceRelation out;
  out.lhs = -windowed_trace_difference(m, f);
  const StepFunction xi = ssf_H_step(m);
  if (!xi.breakpoints().empty()) {
    out.mid = xi.integrate_against_derivative(f, xi.breakpoints().front(), xi.breakpoints().back());
  }
  auto F = [&](double x) { return abel_F(f, x, s); };
  out.rhs = matrix_function(eigh(m.path().a_plus()), F).trace() -
            matrix_function(eigh(m.path().a_minus()), F).trace();
  return out;
}

namespace {

std::vector<double> kernel_points(const ScalarFunction& f, double eps, double lambda) {
  std::vector<double> pts{lambda};
  for (double k : {1.0, 10.0, 100.0}) {
    pts.push_back(lambda - k * eps);
    pts.push_back(lambda + k * eps);
  }
  pts.insert(pts.end(), f.breakpoints.begin(), f.breakpoints.end());
  return sorted_unique(std::move(pts));
}

std::pair<double, double> domain(const ScalarFunction& f, const TransformSettings& s) {
  if (f.support) return *f.support;
  return {-s.truncation_radius, s.truncation_radius};
}

}  // namespace

double hilbert_truncated(const ScalarFunction& f, double eps, double lambda, const TransformSettings& s) {
  if (!(eps > 0.0)) throw PreconditionError("hilbert_truncated: eps must be positive");
  const auto [a, b] = domain(f, s);
  const auto pts = kernel_points(f, eps, lambda);
  auto g = [&](double x) { return checked(f, x, "hilbert_truncated") / (lambda - x); };
  double total = 0.0;
  total += integrate_interval(g, a, std::min(b, lambda - eps), pts, s);
  total += integrate_interval(g, std::max(a, lambda + eps), b, pts, s);
  return total / pi;
}

double poisson(const ScalarFunction& f, double eps, double lambda, const TransformSettings& s) {
  if (!(eps > 0.0)) throw PreconditionError("poisson: eps must be positive");
  auto g = [&](double x) {
    const double d = lambda - x;
    return eps * checked(f, x, "poisson") / (d * d + eps * eps);
  };
  const auto pts = kernel_points(f, eps, lambda);
  if (f.support) return integrate_interval(g, f.support->first, f.support->second, pts, s) / pi;
  return integrate_line(g, pts, s, "poisson") / pi;
}

double conj_poisson(const ScalarFunction& f, double eps, double lambda, const TransformSettings& s) {
  if (!(eps > 0.0)) throw PreconditionError("conj_poisson: eps must be positive");
  const auto [a, b] = domain(f, s);
  auto g = [&](double x) {
    const double d = lambda - x;
    return d * checked(f, x, "conj_poisson") / (d * d + eps * eps);
  };
  return integrate_interval(g, a, b, kernel_points(f, eps, lambda), s) / pi;
}

std::vector<double> default_lebesgue_h_sequence() {
  std::vector<double> h;
  for (int k = 3; k <= 20; ++k) h.push_back(std::ldexp(1.0, -k));
  return h;
}

namespace {

struct SideProbe {
  std::optional<double> value;
  bool lebesgue = false;
  std::vector<std::pair<double, double>> residual;
};

SideProbe probe_side(const ScalarFunction& f, double x, double dir, std::span<const double> hs, double threshold,
                     const TransformSettings& s) {
  SideProbe out;
  auto window = [&](double h) {
    return dir > 0 ? std::make_pair(x, x + h) : std::make_pair(x - h, x);
  };
  auto average = [&](double h, const std::function<double(double)>& g) {
    const auto [a, b] = window(h);
    return integrate_interval(g, a, b, sorted_unique(f.breakpoints), s) / h;
  };
  const double h_min = *std::min_element(hs.begin(), hs.end());
  const double alpha = average(h_min, [&](double t) { return f(t); });
  for (double h : hs) {
    const double m = average(h, [&](double t) { return std::abs(f(t) - alpha); });
    out.residual.emplace_back(h, m);
  }
  std::sort(out.residual.begin(), out.residual.end(), [](auto& p, auto& q) { return p.first > q.first; });

  const double m_min = out.residual.back().second;
  std::vector<std::pair<double, double>> logs;
  // Residuals at roundoff level are exact zeros of the underlying integral.
  const double floor = 1e-12 * (1.0 + std::abs(alpha));
  for (const auto& [h, m] : out.residual) {
    if (m > floor) logs.emplace_back(std::log(h), std::log(m));
  }
  bool decaying = true;
  if (logs.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [lx, ly] : logs) {
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double k = static_cast<double>(logs.size());
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    decaying = slope > 0.0;
  }
  out.lebesgue = m_min < threshold && decaying;
  if (out.lebesgue) out.value = alpha;
  return out;
}

}  // namespace

LebesguePointResult lebesgue_classify(const ScalarFunction& f, double x, std::span<const double> h_sequence,
                                      double threshold, const TransformSettings& s) {
  if (h_sequence.empty()) throw PreconditionError("lebesgue_classify: empty h sequence");
  for (double h : h_sequence) {
    if (!(h > 0.0)) throw PreconditionError("lebesgue_classify: h values must be positive");
  }
  LebesguePointResult r;
  r.point = x;
  r.threshold = threshold;
  SideProbe right = probe_side(f, x, +1.0, h_sequence, threshold, s);
  SideProbe left = probe_side(f, x, -1.0, h_sequence, threshold, s);
  r.right_value = right.value;
  r.left_value = left.value;
  r.right_lebesgue = right.lebesgue;
  r.left_lebesgue = left.lebesgue;
  r.right_residual = std::move(right.residual);
  r.left_residual = std::move(left.residual);
  return r;
}

}  // namespace wittenlab
