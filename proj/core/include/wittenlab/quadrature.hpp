#pragma once

// Gauss-Legendre and double-exponential quadrature. Integrands may return
// double or std::complex<double>.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <type_traits>
#include <vector>

namespace wittenlab::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, computed once per n and cached.
[[nodiscard]] const Rule& gauss_legendre(std::size_t n);

template <class F>
[[nodiscard]] auto gauss_legendre_integrate(F f, double a, double b, std::size_t n = 200) {
  const Rule& r = gauss_legendre(n);
  const double c = 0.5 * (a + b);
  const double d = 0.5 * (b - a);
  decltype(f(0.0)) s{};
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(c + d * r.nodes[i]);
  return s * d;
}

struct Settings {
  double tol = 1e-13;
  int max_level = 12;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  /// Largest weighted integrand magnitude at the outermost nodes; a value that
  /// is not small relative to |value| means the tails did not decay.
  double tail = 0.0;
  int levels = 0;
  bool converged = false;
};

namespace detail {

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

// Shared driver: the map supplies, for a parameter t, the abscissa x(t), the
// Jacobian, and a flag telling whether x is representable away from the end.
template <class F, class Map>
auto de_integrate(F f, Map map, double t_lo, double t_hi, Settings s) {
  using T = std::decay_t<decltype(f(0.0))>;
  Result<T> r;
  double h = 0.5;
  T sum{};
  double norm = 0.0;
  auto eval = [&](double t, T& acc, double& nrm) {
    double x = 0.0;
    double jac = 0.0;
    if (!map(t, x, jac) || jac == 0.0) return 0.0;
    const T v = f(x) * jac;
    acc += v;
    nrm += magnitude(v);
    return magnitude(v);
  };
  for (double t = t_lo; t <= t_hi + 1e-12; t += h) {
    const double m = eval(t, sum, norm);
    if (t >= t_hi - 1.0) r.tail = std::max(r.tail, m);
  }
  T prev = sum * h;
  for (int level = 1; level <= s.max_level; ++level) {
    h *= 0.5;
    for (double t = t_lo + h; t < t_hi; t += 2.0 * h) eval(t, sum, norm);
    const T cur = sum * h;
    r.levels = level;
    r.error = magnitude(cur - prev);
    r.value = cur;
    if (level >= 3 && r.error <= s.tol * std::max(magnitude(cur), norm * h)) {
      r.converged = true;
      break;
    }
    prev = cur;
  }
  r.tail *= 0.5;  // weighted at the coarsest step
  return r;
}

}  // namespace detail

/// Tanh-sinh rule on a finite interval [a, b]. Nodes never coincide with the
/// endpoints, so integrable endpoint singularities are tolerated.
template <class F>
[[nodiscard]] auto tanh_sinh(F f, double a, double b, Settings s = {}) {
  const double c = 0.5 * (a + b);
  const double d = 0.5 * (b - a);
  auto map = [a, b, c, d](double t, double& x, double& jac) {
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(u));
    const double comp = 2.0 * e / (1.0 + e);  // 1 - tanh|u|
    const double delta = d * comp;
    if (!(delta > 0.0)) return false;
    x = (t >= 0.0) ? b - delta : a + delta;
    if (x <= a || x >= b) {
      if (t == 0.0) x = c;
      else return false;
    }
    const double sech = 2.0 * std::sqrt(e) / (1.0 + e);
    jac = d * 0.5 * std::numbers::pi * std::cosh(t) * sech * sech;
    return true;
  };
  return detail::de_integrate(f, map, -4.0, 4.0, s);
}

/// Exp-sinh rule on [a, inf).
template <class F>
[[nodiscard]] auto exp_sinh(F f, double a, Settings s = {}) {
  auto map = [a](double t, double& x, double& jac) {
    const double e = std::exp(0.5 * std::numbers::pi * std::sinh(t));
    if (!(e > 0.0) || !std::isfinite(e)) return false;
    x = a + e;
    if (x == a) return false;
    jac = 0.5 * std::numbers::pi * std::cosh(t) * e;
    return true;
  };
  return detail::de_integrate(f, map, -4.5, 4.5, s);
}

}  // namespace wittenlab::quad
