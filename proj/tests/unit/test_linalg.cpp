#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "wittenlab/error.hpp"
#include "wittenlab/linalg.hpp"
#include "wittenlab/sampling.hpp"

using namespace wittenlab;

namespace {

SymMatrix diag(std::vector<double> d) { return SymMatrix::diagonal(d); }

}  // namespace

TEST_CASE("SymMatrix rejects ragged and asymmetric rows") {
  CHECK_THROWS_AS(SymMatrix::from_rows({{1.0, 2.0}, {2.0}}), PreconditionError);
  CHECK_THROWS_AS(SymMatrix::from_rows({{1.0, 2.0}, {2.5, 1.0}}), PreconditionError);
  const auto m = SymMatrix::from_rows({{1.0, 2.0}, {2.0, 3.0}});
  CHECK(m(0, 1) == 2.0);
  CHECK(m.trace() == 4.0);
}

TEST_CASE("eigh of a diagonal matrix sorts and returns unit vectors") {
  const auto e = eigh(diag({3.0, 1.0, 2.0}));
  REQUIRE(e.size() == 3);
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(2.0));
  CHECK(e.values[2] == doctest::Approx(3.0));
  // eigenvalue 1 lives on coordinate 1, and so on
  CHECK(std::abs(e.vector_entry(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vector_entry(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vector_entry(0, 2)) == doctest::Approx(1.0));
}

TEST_CASE("eigh of the swap matrix") {
  const auto e = eigh(SymMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  CHECK(e.values[0] == doctest::Approx(-1.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(e.vector_entry(0, 0)) == doctest::Approx(r));
  CHECK(e.vector_entry(0, 0) * e.vector_entry(1, 0) == doctest::Approx(-0.5));
  CHECK(e.vector_entry(0, 1) * e.vector_entry(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("eigh residuals on random matrices") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (std::size_t n : {2u, 5u, 12u, 40u}) {
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) a.set(i, j, g(rng));
    const auto e = eigh(a);
    CHECK(reconstruction_residual(a, e) <= 1e-10 * (1.0 + a.max_abs()));
    CHECK(orthogonality_residual(e) <= 1e-12);
    for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k - 1] <= e.values[k]);
  }
}

TEST_CASE("matrix_function") {
  std::mt19937_64 rng(3);
  const auto a = random_symmetric(rng, 5, 0.2, 3.0);
  const auto e = eigh(a);

  SUBCASE("identity reproduces the matrix") {
    const auto b = matrix_function(e, [](double x) { return x; });
    CHECK((b - a).max_abs() <= 1e-10);
  }
  SUBCASE("composition") {
    const auto sq = matrix_function(e, [](double x) { return x * x; });
    const auto ex = matrix_function(e, [](double x) { return std::exp(-x * x); });
    const auto ex2 = matrix_function(eigh(sq), [](double x) { return std::exp(-x); });
    CHECK((ex - ex2).max_abs() <= 1e-9);
  }
  SUBCASE("scalar evaluations") {
    const auto z = matrix_function(eigh(diag({0.0})), [](double x) { return x / std::sqrt(x * x + 1.0); });
    CHECK(z(0, 0) == 0.0);
    const auto h = matrix_function(eigh(diag({std::log(2.0)})), [](double x) { return std::exp(-x); });
    CHECK(h(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("non-finite values are rejected") {
    CHECK_THROWS_AS((void)matrix_function(eigh(diag({0.0})), [](double x) { return 1.0 / x; }), PreconditionError);
  }
}

TEST_CASE("count_below and signed_counts") {
  const auto e = eigh(diag({-1.0, 0.0, 1.0}));
  CHECK(count_below(e, 0.0) == 1);
  CHECK(count_below(e, 0.5) == 2);
  CHECK(count_below(e, -2.0) == 0);
  CHECK(count_below(e, 5.0) == 3);

  auto c = signed_counts(eigh(diag({-1.0, 1.0})), 1e-8);
  CHECK(c.positive == 1);
  CHECK(c.negative == 1);
  CHECK(c.zero == 0);
  c = signed_counts(eigh(diag({0.0, 1.0})), 1e-8);
  CHECK(c.positive == 1);
  CHECK(c.negative == 0);
  CHECK(c.zero == 1);
  c = signed_counts(eigh(diag({1e-12})), 1e-8);
  CHECK(c.zero == 1);
  CHECK(c.positive == 0);
}

TEST_CASE("count_below is monotone") {
  std::mt19937_64 rng(5);
  const auto e = eigh(random_symmetric(rng, 8, 0.1, 4.0));
  std::size_t prev = 0;
  for (double x = -5.0; x <= 5.0; x += 0.01) {
    const auto c = count_below(e, x);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(prev == 8);
}

TEST_CASE("determinant by LU") {
  ComplexMatrix m(2, {cplx(1, 1), cplx(2, 0), cplx(0, 3), cplx(4, -1)});
  const cplx expect = cplx(1, 1) * cplx(4, -1) - cplx(2, 0) * cplx(0, 3);
  const cplx got = determinant(m);
  CHECK(std::abs(got - expect) <= 1e-14);
}

TEST_CASE("logdet_tracked") {
  const double pi = std::numbers::pi;

  SUBCASE("constant path") {
    std::vector<cplx> ones(20, cplx(1.0, 0.0));
    for (const auto& v : logdet_tracked(ones)) CHECK(v.argument == 0.0);
  }
  SUBCASE("winding to 3 pi keeps the full argument") {
    std::vector<cplx> path;
    for (int k = 0; k <= 150; ++k) path.push_back(std::polar(1.0, k * pi / 50.0));
    const auto out = logdet_tracked(path);
    CHECK(out.back().argument == doctest::Approx(3.0 * pi).epsilon(1e-12));
  }
  SUBCASE("closed loop not around 0") {
    std::vector<cplx> path;
    for (int k = 0; k <= 200; ++k) path.push_back(cplx(2.0, 0.0) + std::polar(1.0, 2.0 * pi * k / 200.0));
    const auto out = logdet_tracked(path);
    CHECK(std::abs(out.back().argument - out.front().argument) <= 1e-8);
  }
  SUBCASE("vanishing determinant") {
    std::vector<cplx> path{cplx(1.0, 0.0), cplx(0.5, 0.0), cplx(0.0, 0.0)};
    CHECK_THROWS_AS((void)logdet_tracked(path), ConvergenceError);
  }
  SUBCASE("matrix path") {
    std::vector<ComplexMatrix> mats;
    for (int k = 0; k <= 100; ++k) {
      ComplexMatrix m(2);
      m(0, 0) = std::polar(1.0, k * pi / 50.0);
      m(1, 1) = cplx(2.0, 0.0);
      mats.push_back(m);
    }
    const auto out = logdet_tracked(mats);
    CHECK(out.back().argument == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK(out.back().modulus_log == doctest::Approx(std::log(2.0)));
  }
}

TEST_CASE("random_symmetric honors the spectrum bounds") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = eigh(random_symmetric(rng, 4, 0.2, 2.0));
    for (double v : e.values) {
      CHECK(std::abs(v) >= 0.2 - 1e-10);
      CHECK(std::abs(v) <= 2.0 + 1e-10);
    }
  }
}
