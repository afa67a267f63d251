#include <doctest.h>

#include <clocale>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "wittenlab/csv.hpp"
#include "wittenlab/error.hpp"

using namespace wittenlab;

TEST_CASE("format_double round-trips bit for bit") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::isinf(parse_double("-inf")));
  CHECK(parse_double(format_double(-std::numeric_limits<double>::infinity())) < 0.0);
}

TEST_CASE("emission ignores the locale") {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
    CHECK(format_double(1.5) == "1.5");
    CHECK(parse_double("1.5") == 1.5);
  }
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("table round trip") {
  std::stringstream ss;
  write_csv(ss, {"L", "N", "lambda", "delta_r"}, {{20.0, 1001.0, -0.0625, 0.97}, {40.0, 2001.0, -0.015625, 0.99}});
  const auto t = read_csv(ss);
  REQUIRE(t.header.size() == 4);
  CHECK(t.header[2] == "lambda");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][3] == 0.99);

  std::stringstream bad("a,b\n1,2\n3\n");
  CHECK_THROWS_AS((void)read_csv(bad), PreconditionError);
  std::stringstream junk("a\nx1\n");
  CHECK_THROWS_AS((void)read_csv(junk), PreconditionError);
}

TEST_CASE("step and sampled functions round trip") {
  const StepFunction f({-1.0, 0.25, 3.0}, {2.0, -1.0, 0.5, 0.0});
  std::stringstream ss;
  write_step_csv(ss, f);
  const auto g = read_step_csv(ss);
  CHECK(g.breakpoints() == f.breakpoints());
  CHECK(g.values() == f.values());

  SampledFunction s{{0.1, 0.2, 0.7}, {1.0, 1.0 / 3.0, -2.0}, {}};
  std::stringstream ss2;
  write_sampled_csv(ss2, s);
  const auto t = read_sampled_csv(ss2);
  CHECK(t.abscissae == s.abscissae);
  CHECK(t.ordinates == s.ordinates);
}
