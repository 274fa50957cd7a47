#include <cmath>
#include <random>

#include "doctest.h"
#include "hnls/closedform.hpp"
#include "hnls/error.hpp"
#include "hnls/monodromy.hpp"
#include "oracles.hpp"

using namespace hnls;

TEST_CASE("Omega and H at k = 1 for (1, 1, -sqrt 2)") {
  const ExponentialTriple tr{1.0, 1.0, Complex(-std::sqrt(2.0), 0.0)};
  const OmegaH oh = omega_h(tr, 1.0);
  CHECK(std::abs(oh.omega - 2.5) < 1e-14);
  CHECK(std::abs(oh.h + 1.0) < 1e-14);
  CHECK(std::abs(qb_exponential(tr, 1.0) - Complex(0, -1) / Complex(2.0, std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("family D has Omega = 2k^2 + omega/2 on the continued branch") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int s : {-1, 1}) {
    const ExponentialTriple tr = family_d_triple(0.8, 1.7, s);
    for (int i = 0; i < 30; ++i) {
      const Complex k(u(rng), u(rng));
      const OmegaH oh = omega_h(tr, k);
      CHECK(std::abs(oh.omega - (2.0 * k * k + 0.85)) < 1e-10 * (1.0 + std::norm(k)));
      CHECK(std::abs(oh.h + 0.64) < 1e-10 * (1.0 + std::norm(k)));
    }
  }
}

TEST_CASE("identity (H - 2 Omega) H = (2 alpha k - i conj c)(2 alpha k + i c)") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.2, 2.0);
  for (int n = 0; n < 20; ++n) {
    const ExponentialTriple tr{pos(rng), u(rng), Complex(u(rng), u(rng))};
    for (int i = 0; i < 100; ++i) {
      const Complex k(u(rng), u(rng));
      OmegaH oh;
      try {
        oh = omega_h(tr, k);
      } catch (const Error&) {
        continue;
      }
      const Complex lhs = (oh.h - 2.0 * oh.omega) * oh.h;
      const Complex rhs = (2.0 * tr.alpha * k - kI * std::conj(tr.c)) * (2.0 * tr.alpha * k + kI * tr.c);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)) * (1.0 + std::norm(k)));
    }
  }
}

TEST_CASE("closed-form monodromy agrees with the independent gauge oracle and with RK4") {
  const ExponentialTriple tr{0.6, -2.5, Complex(0.3, 0.8)};
  for (Complex k : {Complex(0.4, 0.1), Complex(-1.0, 0.3)}) {
    const Mat2 a = exponential_monodromy(tr, k);
    const Mat2 b = oracle::exponential_z(tr.alpha, tr.omega, tr.c, k);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()));
    const Mat2 z = monodromy(PeriodicPair::exponential(tr.alpha, tr.omega, tr.c), k, 1e-11).full();
    CHECK((a - z).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("classification examples") {
  auto c1 = classify({1.0, 1.0, Complex(-std::sqrt(2.0), 0.0)});
  CHECK(c1.family == Family::FamilyD_minus);
  CHECK(c1.verdict == ClassVerdict::EventuallyAdmissible);
  auto c2 = classify({1.0, 1.0, Complex(std::sqrt(2.0), 0.0)});
  CHECK(c2.family == Family::FamilyD_plus);
  CHECK(c2.verdict == ClassVerdict::NotAdmissible);
  auto c3 = classify({1.0, -4.0, Complex(0.0, std::sqrt(2.0))});
  CHECK(c3.family == Family::FamilyC);
  auto c4 = classify({1.0, 0.0, Complex(-1.0, 0.0)});
  CHECK(c4.family == Family::FamilyD_minus);
  CHECK(c4.verdict == ClassVerdict::NotAdmissible);
  auto c5 = classify({1.0, -1.0, Complex(0.0, 0.0)});
  CHECK(c5.family == Family::FamilyD_minus);
  CHECK(c5.verdict == ClassVerdict::NotAdmissible);
  CHECK(classify({1.0, 1.0, Complex(0.3, 0.2)}).family == Family::NoneOfThese);
}

TEST_CASE("parametrized families are recognised") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked_b = 0, checked_e = 0;
  for (int i = 0; i < 200; ++i) {
    const double alpha = 0.3 + 1.5 * u(rng);
    const double wa = -3.0 * alpha * alpha * (0.05 + 0.9 * u(rng));
    CHECK(classify(family_a_triple(alpha, wa, i % 2 ? 1 : -1)).family == Family::FamilyA);
    const double wc = -3.0 * alpha * alpha * (1.1 + u(rng));
    CHECK(classify(family_c_triple(alpha, wc)).family == Family::FamilyC);

    const double K = 0.3 + u(rng);
    ExponentialTriple tb;
    const double wb = -K * K * (4.2 + 7.6 * u(rng));
    const double c2b = -(4.0 * K * K + wb) / 2.0 * (0.05 + 0.95 * u(rng));
    if (family_be_triple(K, wb, c2b, i % 2 ? 1 : -1, tb)) {
      const auto cl = classify(tb);
      CHECK(cl.family == Family::FamilyB);
      ++checked_b;
    }
    ExponentialTriple te;
    const double we = -K * K * (3.0 + 0.95 * u(rng));
    const double c2e = -(4.0 * K * K + we) / 2.0 * (0.05 + 0.95 * u(rng));
    if (family_be_triple(K, we, c2e, i % 2 ? 1 : -1, te)) {
      const auto cl = classify(te);
      CHECK(cl.family == Family::FamilyE);
      ++checked_e;
    }
  }
  CHECK(checked_b > 20);
  CHECK(checked_e > 20);
}

TEST_CASE("family D solution values") {
  CHECK(std::abs(u_family_d(1.0, 1.0, 0.0, 0.0) - 1.0) < 1e-15);
  for (double t : {0.3, 1.7, 5.0}) CHECK(std::abs(u_family_d(1.0, 1.0, 0.0, t) - std::polar(1.0, t)) < 1e-14);
  const oracle::FamilyD fd{0.5, 2.0};
  CHECK(std::abs(u_family_d(0.5, 2.0, 1.3, 0.4) - fd.u(1.3, 0.4)) < 1e-14);
  const double h = 1e-4;
  for (double t : {0.0, 2.0}) {
    const Complex d = (u_family_d(1.0, 1.0, h, t) - u_family_d(1.0, 1.0, -h, t)) / (2.0 * h);
    CHECK(std::abs(d + std::sqrt(2.0) * std::polar(1.0, t)) < 1e-7);
  }
}

TEST_CASE("singularity abscissa") {
  CHECK(singularity_x(1.0, 1.0) == doctest::Approx(-std::log(3.0 + 2.0 * std::sqrt(2.0)) / 2.0).epsilon(1e-15));
  CHECK(singularity_x(1.0, 1.0) == doctest::Approx(-0.881374).epsilon(1e-6));
  CHECK(singularity_x(2.0, 0.3) < 0.0);
  CHECK(singularity_x(1e4, 1.0) > -1e-3);
  CHECK(singularity_x(1e-4, 1.0) < -9.0);
}

TEST_CASE("two-pole example") {
  const auto roots = section5_singular_x();
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] + 1.47) < 5e-3);
  CHECK(std::abs(roots[1] + 0.0908) < 5e-3);
  for (double x : {0.0, 0.7, 2.5})
    for (double t : {0.0, 0.9, 2.1}) CHECK(std::abs(u_section5(x, t + 2.0 * kPi) - u_section5(x, t)) < 1e-10);
  CHECK_THROWS_AS(u_section5(roots[1], 0.0), Error);
}

TEST_CASE("level-set samples") {
  const auto pts = omega_levelsets({1.0, -4.0, Complex(0.0, std::sqrt(2.0))}, -2.0, 2.0, -2.0, 2.0, 41, 41);
  CHECK(!pts.empty());
}
