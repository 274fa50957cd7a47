#include <cmath>

#include "doctest.h"
#include "hnls/boundary.hpp"
#include "hnls/error.hpp"

using namespace hnls;

TEST_CASE("exponential pair values and periodicity") {
  const auto p = PeriodicPair::exponential(1.0, 1.0, Complex(-std::sqrt(2.0), 0.0));
  auto v = eval_pair(p, 0.0);
  CHECK(std::abs(v.g0 - 1.0) < 1e-15);
  CHECK(std::abs(v.g1 + std::sqrt(2.0)) < 1e-15);
  v = eval_pair(p, 2.0 * kPi);
  CHECK(std::abs(v.g0 - 1.0) < 1e-15);
  CHECK(std::abs(v.g1 + std::sqrt(2.0)) < 1e-15);
  for (double t = -7.3; t < 40.0; t += 0.37) {
    const auto a = p.eval(t);
    const auto b = p.eval(t + p.tau());
    CHECK(std::abs(a.g0 - b.g0) < 1e-13);
    CHECK(std::abs(std::abs(a.g0) - 1.0) < 1e-14);
  }
}

TEST_CASE("zero Fourier pair") {
  const auto p = PeriodicPair::zero();
  const auto v = p.eval(1.234);
  CHECK(v.g0 == Complex(0.0));
  CHECK(v.g1 == Complex(0.0));
}

TEST_CASE("family D constructor") {
  const auto p = make_exponential_family_d(1.0, 1.0);
  CHECK(p.as_exponential().c.real() == doctest::Approx(-1.4142135623730951).epsilon(1e-15));
  const auto q = make_exponential_family_d(2.0, 0.3);
  CHECK(q.as_exponential().c.real() == doctest::Approx(-2.0 * std::sqrt(4.3)).epsilon(1e-15));
  CHECK_THROWS_AS(make_exponential_family_d(1.0, 0.0), Error);
  CHECK_THROWS_AS(make_exponential_family_d(0.0, 1.0), Error);
  CHECK_THROWS_AS(PeriodicPair::exponential(1.0, 0.0, Complex(1.0)), Error);
}

TEST_CASE("stepper agrees with direct evaluation") {
  const auto p = PeriodicPair::fourier(3.0, {{1, {0.3, 0.1}}, {-2, {0.0, 0.2}}}, {{0, {0.5, 0.0}}, {3, {0.1, -0.1}}});
  const double dt = 3.0 / 3000.0;
  BoundaryStepper s(p, dt);
  for (int j = 0; j <= 3000; ++j) {
    const auto d = p.eval(j * dt);
    CHECK(std::abs(s.current().g0 - d.g0) < 1e-12);
    CHECK(std::abs(s.current().g1 - d.g1) < 1e-12);
    s.advance();
  }
}

TEST_CASE("JSON round trip") {
  const auto p = PeriodicPair::fourier(2.0, {{1, {0.3, 0.1}}}, {{-1, {0.0, 0.2}}});
  nlohmann::json j = p;
  const auto q = pair_from_json(j);
  CHECK(q.tau() == 2.0);
  CHECK(std::abs(q.eval(0.7).g1 - p.eval(0.7).g1) < 1e-15);
  const auto e = pair_from_json(nlohmann::json::parse(R"({"type":"exponential","alpha":1,"omega":1,"c":[-1.5,0]})"));
  CHECK(e.is_exponential());
  CHECK_THROWS_AS(pair_from_json(nlohmann::json::parse(R"({"type":"exponential","alpha":1})")), Error);
}
