#include "wittenlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "wittenlab/error.hpp"

namespace wittenlab {

namespace {

void check_symmetric(std::size_t n, const std::vector<double>& a) {
  double scale = 0.0;
  for (double v : a) {
    if (!std::isfinite(v)) throw PreconditionError("SymMatrix: non-finite entry");
    scale = std::max(scale, std::abs(v));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a[i * n + j] - a[j * n + i]) > 1e-12 * scale) {
        throw PreconditionError("SymMatrix: asymmetric input at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

SymMatrix::SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
  if (n == 0) throw PreconditionError("SymMatrix: dimension must be positive");
}

SymMatrix::SymMatrix(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw PreconditionError("SymMatrix: dimension must be positive");
  std::vector<double> a;
  a.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw PreconditionError("SymMatrix: matrix is not square");
    a.insert(a.end(), row.begin(), row.end());
  }
  return from_entries(n, std::move(a));
}

SymMatrix SymMatrix::from_entries(std::size_t n, std::vector<double> entries) {
  if (n == 0) throw PreconditionError("SymMatrix: dimension must be positive");
  if (entries.size() != n * n) throw PreconditionError("SymMatrix: wrong number of entries");
  check_symmetric(n, entries);
  // Average the triangles so the stored matrix is exactly symmetric.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (entries[i * n + j] + entries[j * n + i]);
      entries[i * n + j] = m;
      entries[j * n + i] = m;
    }
  }
  return SymMatrix(n, std::move(entries));
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
  return t;
}

std::vector<std::vector<double>> SymMatrix::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(a_.begin() + i * n_, a_.begin() + (i + 1) * n_);
  return out;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.n_ != b.n_) throw PreconditionError("SymMatrix: dimension mismatch");
  std::vector<double> c(a.a_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.a_[i] + b.a_[i];
  return SymMatrix(a.n_, std::move(c));
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  if (a.n_ != b.n_) throw PreconditionError("SymMatrix: dimension mismatch");
  std::vector<double> c(a.a_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.a_[i] - b.a_[i];
  return SymMatrix(a.n_, std::move(c));
}

SymMatrix operator*(double s, const SymMatrix& a) {
  std::vector<double> c(a.a_);
  for (double& v : c) v *= s;
  return SymMatrix(a.n_, std::move(c));
}

double EigenDecomposition::spectral_radius() const {
  double r = 0.0;
  for (double v : values) r = std::max(r, std::abs(v));
  return r;
}

EigenDecomposition eigh(const SymMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> a(m.entries().begin(), m.entries().end());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double target = 1e-13 * m.frobenius_norm();
  constexpr int kMaxSweeps = 100;
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[p * n + p] -= t * apq;
        a[q * n + q] += t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          const double np = arp - s * (arq + tau * arp);
          const double nq = arq + s * (arp - tau * arq);
          a[r * n + p] = np;
          a[p * n + r] = np;
          a[r * n + q] = nq;
          a[q * n + r] = nq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v[r * n + p];
          const double vrq = v[r * n + q];
          v[r * n + p] = vrp - s * (vrq + tau * vrp);
          v[r * n + q] = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (sweep == kMaxSweeps && off_norm() > target) {
    throw ConvergenceError("eigh: Jacobi iteration did not converge in 100 sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

  EigenDecomposition e;
  e.values.resize(n);
  e.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    e.values[k] = a[src * n + src];
    for (std::size_t r = 0; r < n; ++r) e.vectors[r * n + k] = v[r * n + src];
  }
  return e;
}

double reconstruction_residual(const SymMatrix& a, const EigenDecomposition& e) {
  const std::size_t n = a.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      double av = 0.0;
      for (std::size_t j = 0; j < n; ++j) av += a(i, j) * e.vector_entry(j, k);
      worst = std::max(worst, std::abs(av - e.vector_entry(i, k) * e.values[k]));
    }
  }
  return worst;
}

double orthogonality_residual(const EigenDecomposition& e) {
  const std::size_t n = e.size();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k; l < n; ++l) {
      double d = 0.0;
      for (std::size_t r = 0; r < n; ++r) d += e.vector_entry(r, k) * e.vector_entry(r, l);
      worst = std::max(worst, std::abs(d - (k == l ? 1.0 : 0.0)));
    }
  }
  return worst;
}

SymMatrix matrix_function(const EigenDecomposition& e, const std::function<double(double)>& f) {
  const std::size_t n = e.size();
  std::vector<double> fv(n);
  for (std::size_t k = 0; k < n; ++k) {
    fv[k] = f(e.values[k]);
    if (!std::isfinite(fv[k])) {
      throw PreconditionError("matrix_function: f is not finite at eigenvalue " +
                              std::to_string(e.values[k]));
    }
  }
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += e.vector_entry(i, k) * fv[k] * e.vector_entry(j, k);
      out.set(i, j, s);
    }
  }
  return out;
}

cplx trace_function(const EigenDecomposition& e, const std::function<cplx(double)>& f) {
  cplx s = 0.0;
  for (double mu : e.values) s += f(mu);
  return s;
}

std::size_t count_below(const EigenDecomposition& e, double lambda) {
  return static_cast<std::size_t>(std::lower_bound(e.values.begin(), e.values.end(), lambda) -
                                  e.values.begin());
}

SignedCounts signed_counts(const EigenDecomposition& e, double zero_tol) {
  if (zero_tol < 0.0) throw PreconditionError("signed_counts: zero_tol must be non-negative");
  SignedCounts c;
  for (double mu : e.values) {
    if (mu > zero_tol) {
      ++c.positive;
    } else if (mu < -zero_tol) {
      ++c.negative;
    } else {
      ++c.zero;
    }
  }
  return c;
}

double default_zero_tol(const SymMatrix& a) { return 1e-8 * (1.0 + a.max_abs()); }

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) throw PreconditionError("ComplexMatrix: wrong number of entries");
}

cplx determinant(ComplexMatrix m) {
  const std::size_t n = m.size();
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    }
    if (m(pivot, col) == cplx(0.0)) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    const cplx p = m(col, col);
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx factor = m(r, col) / p;
      if (factor == cplx(0.0)) continue;
      for (std::size_t c = col + 1; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

cplx BranchedLogValue::value() const { return std::exp(cplx(modulus_log, argument)); }

std::vector<BranchedLogValue> logdet_tracked(std::span<const cplx> values, double anchor) {
  std::vector<BranchedLogValue> out;
  out.reserve(values.size());
  cplx prev;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const cplx d = values[k];
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag()) || std::abs(d) == 0.0) {
      throw ConvergenceError("logdet_tracked: vanishing or non-finite value at sample " +
                             std::to_string(k));
    }
    BranchedLogValue v;
    v.modulus_log = std::log(std::abs(d));
    if (k == 0) {
      const double principal = std::arg(d);
      const double turns = std::round((anchor - principal) / (2.0 * std::numbers::pi));
      v.argument = principal + 2.0 * std::numbers::pi * turns;
    } else {
      const double step = std::arg(d / prev);
      if (std::abs(step) > kMaxArgumentStep) {
        throw ConvergenceError("logdet_tracked: argument step " + std::to_string(step) +
                               " at sample " + std::to_string(k) +
                               " exceeds resolution limit; refine the path");
      }
      v.argument = out.back().argument + step;
    }
    prev = d;
    out.push_back(v);
  }
  return out;
}

std::vector<BranchedLogValue> logdet_tracked(std::span<const ComplexMatrix> path, double anchor) {
  std::vector<cplx> dets;
  dets.reserve(path.size());
  for (const auto& m : path) dets.push_back(determinant(m));
  return logdet_tracked(std::span<const cplx>(dets), anchor);
}

}  // namespace wittenlab
