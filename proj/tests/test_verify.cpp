#include <cmath>

#include "doctest.h"
#include "hnls/closedform.hpp"
#include "hnls/verify.hpp"

using namespace hnls;

TEST_CASE("residual of trivial and exact fields") {
  const Grid g{0.5, 5.0, 10, 0.0, 6.0, 10};
  CHECK(nls_residual([](double, double) { return Complex(0.0); }, g, 1e-3, 1e-3) == 0.0);
  const Field fd = [](double x, double t) { return u_family_d(1.0, 1.0, x, t); };
  CHECK(nls_residual(fd, g, 1e-3, 1e-3) < 1e-5);
  const auto rc = residual_convergence(fd, g, 1e-2);
  CHECK(rc.order > 1.9);
}

TEST_CASE("plane wave negative control") {
  for (auto [a, w] : {std::pair{1.0, 1.0}, std::pair{0.5, -0.1}, std::pair{2.0, 3.0}}) {
    const Field pw = [a = a, w = w](double, double t) { return a * std::polar(1.0, w * t); };
    const double r = nls_residual(pw, Grid{0.0, 1.0, 3, 0.0, 2.0, 5}, 1e-3, 1e-3);
    const double expect = std::abs(w + 2.0 * a * a) * a;
    CHECK(std::abs(r - expect) < 0.01 * expect);
  }
  const Field exact = [](double, double t) { return std::polar(1.0, -2.0 * t); };
  CHECK(nls_residual(exact, Grid{0.0, 1.0, 3, 0.0, 2.0, 5}, 1e-3, 1e-3) < 1e-5);
}

TEST_CASE("boundary reproduction and periodicity of the family D solution") {
  const Field fd = [](double x, double t) { return u_family_d(1.0, 1.0, x, t); };
  const auto pair = make_exponential_family_d(1.0, 1.0);
  std::vector<double> ts;
  for (int j = 0; j <= 40; ++j) ts.push_back(4.0 * kPi * j / 40.0);
  const auto [e0, e1] = boundary_check(fd, pair, ts, 1e-3);
  CHECK(e0 < 1e-12);
  CHECK(e1 < 1e-8);
  CHECK(periodicity_check(fd, 2.0 * kPi, Grid{0.0, 5.0, 11, 0.0, 6.0, 11}) < 1e-12);
  const auto zero = [](double, double) { return Complex(0.0); };
  const auto [z0, z1] = boundary_check(zero, PeriodicPair::zero(), ts, 1e-3);
  CHECK(z0 == 0.0);
  CHECK(z1 == 0.0);
}

TEST_CASE("decay and L1 profile") {
  const Field fd = [](double x, double t) { return u_family_d(1.0, 1.0, x, t); };
  const auto prof = decay_check(fd, {5.0, 6.0, 7.0, 8.0}, {0.0, 1.0, 2.0});
  for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof[i - 1].second / prof[i].second == doctest::Approx(std::exp(1.0)).epsilon(1e-3));
  const auto l1 = l1_growth(fd, {0.0, 1.0, 2.0});
  CHECK(std::abs(l1[0].second - l1[2].second) < 1e-12);
  const auto rep = verify_solution(fd, 2.0 * kPi, Grid{0.0, 5.0, 11, 0.0, 4.0 * kPi, 11}, make_exponential_family_d(1.0, 1.0));
  CHECK(rep.pass);
}
