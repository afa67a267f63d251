#include "wittenlab/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "wittenlab/error.hpp"

extern "C" {
void dsbtrd_(const char* vect, const char* uplo, const int* n, const int* kd, double* ab,
             const int* ldab, double* d, double* e, double* q, const int* ldq, double* work,
             int* info);
void dstemr_(const char* jobz, const char* range, const int* n, double* d, double* e,
             const double* vl, const double* vu, const int* il, const int* iu, int* m, double* w,
             double* z, const int* ldz, const int* nzc, int* isuppz, int* tryrac, double* work,
             const int* lwork, int* iwork, const int* liwork, int* info);
}

namespace wittenlab {

BandedSymMatrix::BandedSymMatrix(std::size_t n, std::size_t kd)
    : n_(n), kd_(std::min(kd, n == 0 ? 0 : n - 1)), ab_((kd_ + 1) * n, 0.0) {
  if (n == 0) throw PreconditionError("BandedSymMatrix: dimension must be positive");
}

std::size_t BandedSymMatrix::index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (j >= n_) throw PreconditionError("BandedSymMatrix: index out of range");
  if (j - i > kd_) throw PreconditionError("BandedSymMatrix: entry outside the band");
  return kd_ + i - j + j * (kd_ + 1);
}

double BandedSymMatrix::at(std::size_t i, std::size_t j) const {
  const std::size_t lo = std::min(i, j);
  const std::size_t hi = std::max(i, j);
  if (hi - lo > kd_) return 0.0;
  return ab_[index(i, j)];
}

void BandedSymMatrix::set(std::size_t i, std::size_t j, double v) { ab_[index(i, j)] = v; }

void BandedSymMatrix::add(std::size_t i, std::size_t j, double v) { ab_[index(i, j)] += v; }

double BandedSymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t j = 0; j < n_; ++j) t += ab_[kd_ + j * (kd_ + 1)];
  return t;
}

SymMatrix BandedSymMatrix::to_dense() const {
  SymMatrix m(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = (j > kd_ ? j - kd_ : 0); i <= j; ++i) m.set(i, j, ab_[index(i, j)]);
  }
  return m;
}

namespace {

using ColMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;

struct BandedEig {
  std::vector<double> values;
  ColMatrix q;  // band -> tridiagonal transform
  ColMatrix z;  // tridiagonal eigenvectors
};

// Band -> tridiagonal (dsbtrd), then MRRR on the tridiagonal (dstemr). The
// back-transform q * z is left to Eigen: the OpenBLAS DGEMM kernel selected on
// some AVX-512 parts returns wrong products, which also rules out dsbevd.
BandedEig run_banded_eig(const BandedSymMatrix& m) {
  const int n = static_cast<int>(m.size());
  const int kd = static_cast<int>(m.bandwidth());
  const int ldab = kd + 1;
  const auto nn = m.size();
  std::vector<double> ab = m.storage();
  std::vector<double> d(nn), e(nn, 0.0), work(nn);
  BandedEig out;
  out.q.resize(n, n);
  int info = 0;
  const char vect = 'V';
  const char uplo = 'U';
  dsbtrd_(&vect, &uplo, &n, &kd, ab.data(), &ldab, d.data(), e.data(), out.q.data(), &n,
          work.data(), &info);
  if (info != 0) throw ConvergenceError("eigh_banded: dsbtrd failed, info " + std::to_string(info));

  out.values.assign(nn, 0.0);
  out.z.resize(n, n);
  std::vector<int> isuppz(2 * nn);
  const char jobz = 'V';
  const char range = 'A';
  const double vl = 0.0, vu = 0.0;
  const int il = 0, iu = 0;
  int found = 0;
  int tryrac = 1;
  int lwork = -1, liwork = -1;
  double work_query = 0.0;
  int iwork_query = 0;
  dstemr_(&jobz, &range, &n, d.data(), e.data(), &vl, &vu, &il, &iu, &found, out.values.data(),
          out.z.data(), &n, &n, isuppz.data(), &tryrac, &work_query, &lwork, &iwork_query,
          &liwork, &info);
  if (info != 0) throw ConvergenceError("eigh_banded: workspace query failed, info " + std::to_string(info));
  lwork = std::max(static_cast<int>(work_query), 18 * n);
  liwork = std::max(iwork_query, 10 * n);
  work.assign(static_cast<std::size_t>(lwork), 0.0);
  std::vector<int> iwork(static_cast<std::size_t>(liwork));
  dstemr_(&jobz, &range, &n, d.data(), e.data(), &vl, &vu, &il, &iu, &found, out.values.data(),
          out.z.data(), &n, &n, isuppz.data(), &tryrac, work.data(), &lwork, iwork.data(),
          &liwork, &info);
  if (info != 0 || found != n)
    throw ConvergenceError("eigh_banded: dstemr failed, info " + std::to_string(info));
  return out;
}

}  // namespace

EigenDecomposition eigh_banded(const BandedSymMatrix& m) {
  BandedEig be = run_banded_eig(m);
  const std::size_t n = m.size();
  EigenDecomposition e;
  e.values = std::move(be.values);
  e.vectors.resize(n * n);
  // Row-major n x n storage of q * z.
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> v(
      e.vectors.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  v.noalias() = be.q * be.z;
  return e;
}

WeightedSpectrum eigh_banded_weighted(const BandedSymMatrix& m, std::span<const double> row_weights) {
  const std::size_t n = m.size();
  if (row_weights.size() != n) throw PreconditionError("eigh_banded_weighted: weight length mismatch");
  BandedEig be = run_banded_eig(m);

  // Only rows with nonzero weight enter the sums.
  std::vector<Eigen::Index> rows;
  for (std::size_t r = 0; r < n; ++r) {
    if (row_weights[r] != 0.0) rows.push_back(static_cast<Eigen::Index>(r));
  }
  const ColMatrix qr = be.q(rows, Eigen::all);
  const ColMatrix v = qr * be.z;

  WeightedSpectrum out;
  out.values = std::move(be.values);
  out.weights.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double x = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      s += row_weights[static_cast<std::size_t>(rows[i])] * x * x;
    }
    out.weights[k] = s;
  }
  return out;
}

}  // namespace wittenlab
