#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "models.hpp"
#include "wittenlab/error.hpp"
#include "wittenlab/model.hpp"

using namespace wittenlab;
using namespace testing_models;

TEST_CASE("profiles") {
  const auto lg = Profile::logistic();
  for (double t : {-3.0, -0.2, 0.0, 1.5}) CHECK(2.0 * lg.value(t) - 1.0 == doctest::Approx(std::tanh(0.5 * t)));
  const auto th = Profile::tanh_rescaled();
  CHECK(th.value(0.0) == 0.5);
  CHECK(th.derivative(0.0) == doctest::Approx(0.5));
  const auto cs = Profile::custom_sampled({-2.0, 0.0, 2.0}, {0.0, 0.5, 1.0});
  CHECK(cs.value(-5.0) == 0.0);
  CHECK(cs.value(5.0) == 1.0);
  CHECK(cs.value(0.0) == doctest::Approx(0.5));
  CHECK(parse_profile_kind("custom-sampled") == ProfileKind::custom_sampled);
  CHECK_THROWS((void)parse_profile_kind("sigmoid"));
}

TEST_CASE("build_path") {
  const auto p = tanh_path();
  CHECK(p.a_plus()(0, 0) == 1.0);
  CHECK(p.at(0.7)(0, 0) == doctest::Approx(std::tanh(0.35)));
  CHECK(std::abs(p.variation() - 2.0) <= 1e-6);

  const auto h = half_path();
  CHECK(h.a_plus()(0, 0) == 1.0);

  const auto z = build_path(diag({0.5, -1.0}), SymMatrix(2), Profile::logistic());
  CHECK((z.a_plus() - z.a_minus()).max_abs() == 0.0);

  CHECK_THROWS_AS((void)build_path(diag({1.0}), diag({1.0, 2.0}), Profile::logistic()), PreconditionError);
  CHECK_THROWS_AS((void)build_path(diag({1.0}), diag({1.0}), Profile::custom_sampled({0.0, 1.0}, {0.2, 0.9})),
                  PreconditionError);
}

TEST_CASE("discretize preconditions") {
  const auto p = tanh_path();
  CHECK_THROWS_AS((void)discretize(p, 10.0, 100), PreconditionError);
  CHECK_THROWS_AS((void)discretize(p, 10.0, 1), PreconditionError);
  CHECK_THROWS_AS((void)discretize(p, -1.0, 101), PreconditionError);
  DiscretizeOptions small;
  small.max_dim = 50;
  CHECK_THROWS_AS((void)discretize(p, 10.0, 101, small), ResourceError);
}

TEST_CASE("H1 and H2 are the products of D") {
  const auto m = discretize(crossing_path(), 4.0, 9);
  const std::size_t n = m.dim();
  const auto d = m.dense_D();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dtd = 0.0;
      double ddt = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        dtd += d[k * n + i] * d[k * n + j];
        ddt += d[i * n + k] * d[j * n + k];
      }
      worst = std::max({worst, std::abs(dtd - m.H1().at(i, j)), std::abs(ddt - m.H2().at(i, j))});
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("trace, positivity and pairing of H1 and H2") {
  const auto& m = cached("tanh", 40.0, 2001);
  CHECK(std::abs(m.H1().trace() - m.H2().trace()) <= 1e-9 * m.H1().trace());

  const auto& s1 = m.spectrum_H1().values;
  const auto& s2 = m.spectrum_H2().values;
  REQUIRE(s1.size() == s2.size());
  for (double v : s1) CHECK(v >= -1e-10);
  for (double v : s2) CHECK(v >= -1e-10);
  std::size_t unpaired = 0;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (s1[i] > 1e-4 && std::abs(s1[i] - s2[i]) > std::max(1e-8, 1e-8 * s1[i])) ++unpaired;
  }
  CHECK(unpaired == 0);
}

TEST_CASE("kernel dimensions") {
  auto k = kernel_dims(cached("tanh", 40.0, 2001), 1e-4);
  CHECK(k.first == 1);
  CHECK(k.second == 0);

  k = kernel_dims(cached("reversed", 40.0, 2001), 1e-4);
  CHECK(k.first == 0);
  CHECK(k.second == 1);

  const double gap = std::pow(std::acos(-1.0) / (2.0 * 20.0), 2);
  k = kernel_dims(cached("zero", 20.0, 1001), 0.5 * gap);
  CHECK(k.first == 0);
  CHECK(k.second == 0);
}

TEST_CASE("delta_r and delta_s on the tanh model") {
  const auto& m = cached("tanh", 40.0, 2001);
  CHECK(std::abs(delta_r(m, -0.01) - 1.0) <= 0.05);
  CHECK(std::abs(delta_s(m, 50.0) - 1.0) <= 0.05);
  CHECK(std::abs(delta_r(m, -1e6)) <= 1e-2);
  CHECK(std::abs(delta_s(m, 1e-6)) <= 1e-2);
  CHECK_THROWS_AS((void)delta_r(m, 0.1), PreconditionError);
  CHECK_THROWS_AS((void)delta_s(m, 0.0), PreconditionError);
}

TEST_CASE("reversing the path flips the sign of delta_r") {
  const auto& a = cached("tanh", 40.0, 2001);
  const auto& b = cached("reversed", 40.0, 2001);
  for (double lam : {-0.02, -0.1, -1.0}) CHECK(std::abs(delta_r(a, lam) + delta_r(b, lam)) <= 1e-3);
}

TEST_CASE("delta functionals vanish on the zero path") {
  // not exactly zero: the node and midpoint windows see slightly different
  // Dirichlet tails
  const auto& m = cached("zero", 20.0, 1001);
  for (double lam : {-0.0625, -0.5, -4.0}) CHECK(std::abs(delta_r(m, lam)) <= 1e-4);
  for (double t : {0.1, 1.0, 16.0}) CHECK(std::abs(delta_s(m, t)) <= 1e-4);
}

TEST_CASE("resolvent trace formula") {
  const auto& m = cached("tanh", 40.0, 2001);
  const auto c = resolvent_trace_check(m, {-1.0, 0.0});
  CHECK(c.rhs.real() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(c.rel_err <= 1e-2);

  // z = -100 needs the finer grid h = 0.02
  const auto fine = discretize(tanh_path(), 20.0, 2001);
  CHECK(resolvent_trace_check(fine, {-100.0, 0.0}).rel_err <= 1e-2);

  const auto& z = cached("zero", 20.0, 1001);
  const auto zc = resolvent_trace_check(z, {-1.0, 0.0});
  CHECK(zc.rhs == std::complex<double>(0.0, 0.0));
  CHECK(std::abs(zc.lhs) <= 1e-4);

  CHECK_THROWS_AS((void)resolvent_trace_check(m, {1.0, 0.0}), PreconditionError);
}

TEST_CASE("g_z") {
  CHECK(g_z(0.0, {-1.0, 0.0}) == std::complex<double>(0.0, 0.0));
  CHECK(std::abs(g_z(1.0, {-1.0, 0.0}) - 1.0 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(g_z(-3.0, {-1.0, 0.0}) + 3.0 / std::sqrt(10.0)) <= 1e-15);
}

TEST_CASE("fredholm_check and essential spectrum") {
  auto f = fredholm_check(tanh_path(), 1e-6);
  CHECK(f.fredholm);
  CHECK(f.gap_plus == doctest::Approx(1.0));
  CHECK(f.gap_minus == doctest::Approx(1.0));

  CHECK_FALSE(fredholm_check(build_path(diag({0.0}), diag({3.0}), Profile::logistic()), 1e-6).fredholm);

  f = fredholm_check(build_path(diag({-1.0}), diag({1.0}), Profile::logistic()), 1e-6);
  CHECK_FALSE(f.fredholm);
  CHECK(f.gap_plus == 0.0);

  CHECK(essential_spectrum_strips(tanh_path()) == std::vector<double>{-1.0, 1.0});
  CHECK(essential_spectrum_strips(build_path(diag({-1.0, 1.0}), SymMatrix(2), Profile::logistic())) ==
        std::vector<double>{-1.0, 1.0});
  CHECK(essential_spectrum_strips(half_path()) == std::vector<double>{0.0, 1.0});
}

namespace {

double window_average(const DiscretizedModel& m) {
  std::vector<double> grid;
  for (int i = 0; i < 81; ++i) grid.push_back(0.1 + 0.8 * i / 80.0);
  const auto s = ssf_H_discrete(m, grid);
  double sum = 0.0;
  for (double v : s.ordinates) sum += v;
  return sum / static_cast<double>(grid.size());
}

}  // namespace

TEST_CASE("ssf_H_discrete window averages") {
  CHECK(std::abs(window_average(cached("tanh", 40.0, 2001)) - 1.0) <= 0.15);
  CHECK(std::abs(window_average(cached("half", 40.0, 2001)) - 0.5) <= 0.15);
  CHECK(std::abs(window_average(cached("zero", 20.0, 1001))) <= 1e-3);
}
