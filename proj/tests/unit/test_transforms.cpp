#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "models.hpp"
#include "wittenlab/error.hpp"
#include "wittenlab/transforms.hpp"

using namespace wittenlab;
using testing_models::cached;

namespace {

const double pi = std::numbers::pi;
const double inf = std::numeric_limits<double>::infinity();

double arcsine_closed_form(double lambda) { return (2.0 / pi) * std::asin(std::min(1.0, 1.0 / std::sqrt(lambda))); }

StepFunction indicator_step(double a, double b) { return StepFunction({a, b}, {0.0, 1.0, 0.0}); }

// Unit jumps at +-1/n, -1 jumps at the midpoints, zero outside [-1, 1]: value
// 1 on (1/(n+1), mid) and on (-1/n, -mid), 0 elsewhere.
ScalarFunction comb() {
  ScalarFunction f;
  f.eval = [](double x) {
    const double a = std::abs(x);
    if (a == 0.0 || a >= 1.0) return 0.0;
    const double n = std::floor(1.0 / a);
    const double mid = 0.5 * (1.0 / n + 1.0 / (n + 1.0));
    return x > 0 ? (a < mid ? 1.0 : 0.0) : (a > mid ? 1.0 : 0.0);
  };
  for (int n = 1; n <= 4096; ++n) {
    const double p = 1.0 / n;
    const double m = 0.5 * (p + 1.0 / (n + 1.0));
    for (double b : {p, m, -p, -m}) f.breakpoints.push_back(b);
  }
  f.support = std::make_pair(-1.0, 1.0);
  return f;
}

}  // namespace

TEST_CASE("op_S") {
  for (double lam : {1e-3, 1.0, 1e3}) CHECK(std::abs(op_S(ScalarFunction::constant(1.0), lam) - 0.5) <= 1e-12);
  ScalarFunction nu{[](double x) { return x; }, {}, std::nullopt};
  CHECK(std::abs(op_S(nu, 1.0) - 1.0 / pi) <= 1e-12);
  CHECK(op_S(ScalarFunction::constant(0.0), 2.0) == 0.0);
  ScalarFunction bump{[](double x) { return std::exp(-x * x); }, {}, std::nullopt};
  for (double lam : {0.1, 1.0, 9.0}) CHECK(op_S(bump, lam) >= 0.0);
  CHECK_THROWS_AS((void)op_S(bump, 0.0), PreconditionError);
}

TEST_CASE("pushnitski_forward is the arcsine closed form") {
  const auto ind = indicator_step(-1.0, 1.0);
  CHECK(std::abs(pushnitski_at(ind, 0.5) - 1.0) <= 1e-14);
  CHECK(std::abs(pushnitski_at(ind, 4.0) - 1.0 / 3.0) <= 1e-14);
  CHECK(pushnitski_at(StepFunction(), 3.0) == 0.0);

  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back(0.05 * i);
  const auto s = pushnitski_forward(ind, grid);
  const auto f = ScalarFunction::indicator(-1.0, 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(s.ordinates[i] - arcsine_closed_form(grid[i])) <= 1e-10);
    CHECK(std::abs(s.ordinates[i] - pushnitski_quadrature(f, grid[i])) <= 1e-8);
  }
}

TEST_CASE("pushnitski_forward averages one-sided values at 0") {
  const auto half = indicator_step(0.0, 1.0);
  CHECK(std::abs(pushnitski_at(half, 1e-12) - 0.5) <= 1e-8);
  const auto shifted = StepFunction({-2.0, 0.0, 3.0}, {0.0, 1.0, 3.0, 0.0});
  CHECK(std::abs(pushnitski_at(shifted, 1e-12) - 2.0) <= 1e-8);
}

TEST_CASE("op_T normalizations") {
  const auto pos = ScalarFunction::indicator(0.0, inf);
  for (double lam : {1e-4, 1.0, 50.0}) CHECK(std::abs(op_T(pos, lam) - 1.0) <= 1e-8);
  CHECK(std::abs(op_T(ScalarFunction::constant(1.0), 0.3) - 2.0) <= 1e-8);
  ScalarFunction smooth{[](double x) { return 0.37 * std::exp(-x * x); }, {}, std::nullopt};
  CHECK(std::abs(op_T(smooth, 1e-6) - 0.74) <= 1e-3);
}

TEST_CASE("op_T_complex") {
  const auto pos = ScalarFunction::indicator(0.0, inf);
  for (int k = 1; k <= 6; ++k) {
    const auto v = op_T_complex(pos, {-std::pow(10.0, -k), 0.0});
    CHECK(std::abs(v - 1.0) <= 1e-8);
  }
  CHECK(std::abs(op_T_complex(pos, {-1.0, 2.0}) - 1.0) <= 1e-8);
  CHECK(std::abs(op_T_complex(ScalarFunction::constant(0.0), {-1.0, 0.0})) == 0.0);
  const auto v = op_T_complex(ScalarFunction::indicator(-1.0, 1.0), {-1e-6, 0.0});
  CHECK(std::abs(v - 2.0) <= 1e-3);
  CHECK_THROWS_AS((void)op_T_complex(pos, {1.0, 0.0}), PreconditionError);
}

TEST_CASE("Abel pair closed forms") {
  SUBCASE("examples") {
    auto res = [](double l) { return 1.0 / (l + 1.0); };
    CHECK(std::abs(abel_F(res, 1.0) + 1.0 / (2.0 * std::sqrt(2.0))) <= 1e-10);
    auto heat = [](double l) { return std::exp(-l); };
    CHECK(std::abs(abel_F(heat, 1.0) + 0.5 * std::erf(1.0)) <= 1e-10);
    CHECK(abel_F(heat, 0.0) == 0.0);
  }
  SUBCASE("resolvent family") {
    for (double z : {-1.0, -4.0}) {
      auto f = [z](double l) { return 1.0 / (l - z); };
      auto fp = [z](double l) { return -1.0 / ((l - z) * (l - z)); };
      for (double nu = -5.0; nu <= 5.0; nu += 0.25) {
        const double a = std::sqrt(nu * nu - z);
        CHECK(std::abs(abel_F(f, nu) - nu / (2.0 * z * a)) <= 1e-8);
        CHECK(std::abs(abel_Fprime(fp, nu) + 0.5 / (a * a * a)) <= 1e-8);
      }
    }
  }
  SUBCASE("heat family") {
    for (double s : {0.5, 1.0, 2.0}) {
      auto f = [s](double l) { return std::exp(-s * l); };
      for (double nu = -5.0; nu <= 5.0; nu += 0.25) {
        CHECK(std::abs(abel_F(f, nu) + 0.5 * std::erf(std::sqrt(s) * nu)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("trace relation on the tanh model") {
  const auto& m = cached("tanh", 40.0, 2001);
  const auto r = trace_relation_check([](double l) { return 1.0 / (l + 1.0); }, m);
  CHECK(std::abs(r.rhs + 1.0 / std::sqrt(2.0)) <= 1e-8);
  CHECK(std::abs(r.lhs - r.rhs) <= 2e-2);
  CHECK(std::abs(r.mid - r.lhs) <= 1e-8);

  const auto h = trace_relation_check([](double l) { return std::exp(-l); }, m);
  CHECK(std::abs(h.rhs + std::erf(1.0)) <= 1e-8);
  CHECK(std::abs(h.lhs - h.rhs) <= 2e-2);

  const auto& z = cached("zero", 20.0, 1001);
  const auto zr = trace_relation_check([](double l) { return std::exp(-l); }, z);
  CHECK(zr.rhs == 0.0);
  CHECK(std::abs(zr.lhs) <= 1e-4);
}

TEST_CASE("Hilbert and Poisson operators") {
  const auto one = ScalarFunction::constant(1.0);
  for (double eps : {1e-2, 0.5}) {
    for (double lam : {-2.0, 0.0, 3.0}) CHECK(std::abs(poisson(one, eps, lam) - 1.0) <= 1e-6);
    CHECK(std::abs(conj_poisson(one, eps, 0.0)) <= 1e-10);
    CHECK(std::abs(hilbert_truncated(one, eps, 0.0)) <= 1e-10);
  }
  const auto unit = ScalarFunction::indicator(0.0, 1.0);
  CHECK(std::abs(hilbert_truncated(unit, 1e-6, 0.5)) <= 1e-10);
  CHECK(std::abs(hilbert_truncated(unit, 1e-6, 0.25) - std::log(0.25 / 0.75) / pi) <= 1e-6);

  // |H_eps f - Q_eps f| <= P_eps |f|
  ScalarFunction f{[](double x) { return std::sin(3.0 * x) * std::exp(-x * x); }, {}, std::make_pair(-8.0, 8.0)};
  ScalarFunction af{[&f](double x) { return std::abs(f(x)); }, {}, f.support};
  for (double eps : {1e-3, 1e-2, 1e-1}) {
    for (double lam : {-1.0, -0.3, 0.0, 0.7, 2.0}) {
      const double d = std::abs(hilbert_truncated(f, eps, lam) - conj_poisson(f, eps, lam));
      CHECK(d <= poisson(af, eps, lam) + 1e-6);
    }
  }
}

TEST_CASE("Lebesgue-point probe") {
  const auto hs = default_lebesgue_h_sequence();
  REQUIRE(hs.size() == 18);

  SUBCASE("step at 0") {
    const auto r = lebesgue_classify(ScalarFunction::indicator(0.0, inf), 0.0, hs);
    CHECK(r.right_lebesgue);
    CHECK(r.left_lebesgue);
    REQUIRE(r.right_value.has_value());
    REQUIRE(r.left_value.has_value());
    CHECK(std::abs(*r.right_value - 1.0) <= 1e-12);
    CHECK(std::abs(*r.left_value) <= 1e-12);
  }
  SUBCASE("the value at the point does not matter") {
    for (double beta : {0.0, 0.5, 7.0}) {
      ScalarFunction f{[beta](double x) { return x < 0 ? 0.0 : (x == 0 ? beta : 1.0); }, {0.0}, std::nullopt};
      const auto r = lebesgue_classify(f, 0.0, hs);
      CHECK(r.right_lebesgue);
      CHECK(r.left_lebesgue);
      CHECK(std::abs(r.right_value.value_or(-1.0) - 1.0) <= 1e-12);
      CHECK(std::abs(r.left_value.value_or(-1.0)) <= 1e-12);
    }
  }
  SUBCASE("comb has no one-sided Lebesgue value") {
    const auto r = lebesgue_classify(comb(), 0.0, hs);
    CHECK_FALSE(r.right_lebesgue);
    CHECK_FALSE(r.left_lebesgue);
    CHECK_FALSE(r.right_value.has_value());
  }
  SUBCASE("continuous function") {
    ScalarFunction f{[](double x) { return std::cos(x); }, {}, std::nullopt};
    const auto r = lebesgue_classify(f, 0.0, hs);
    CHECK(r.right_lebesgue);
    CHECK(std::abs(r.right_value.value_or(0.0) - 1.0) <= 1e-6);
  }
}
