#include <cmath>
#include <random>

#include "doctest.h"
#include "hnls/error.hpp"
#include "hnls/spectral.hpp"
#include "oracles.hpp"

using namespace hnls;

namespace {
const Complex kSqrt2(std::sqrt(2.0), 0.0);
}

TEST_CASE("G for the zero pair") {
  const auto p = PeriodicPair::zero();
  CHECK(std::abs(g_of_k(monodromy(p, 0.5, 1e-11))) < 1e-9);
  const Complex k(0.3, 0.2);
  const Complex g = g_of_k(monodromy(p, k, 1e-11));
  const Complex s = std::sin(2.0 * k * k * p.tau());
  CHECK(std::abs(g + 4.0 * s * s) < 1e-9);
  CHECK(std::abs(sqrt_g_admissible(k, p.tau()) * sqrt_g_admissible(k, p.tau()) - g) < 1e-9);
}

TEST_CASE("admissible square root") {
  CHECK(sqrt_g_admissible(0.0, 1.0) == Complex(0.0));
  const double tau = 2.0 * kPi;
  const double k = std::sqrt(kPi / 2.0 / (2.0 * tau));
  CHECK(std::abs(sqrt_g_admissible(k, tau) - Complex(0, 2)) < 1e-14);
}

TEST_CASE("family D spectral functions match the rational closed forms") {
  const auto p = PeriodicPair::exponential(1.0, 1.0, -kSqrt2);
  const oracle::FamilyD fd{1.0, 1.0};

  // k = 1 and k = 0 are lattice points where Q^b is 0/0; use the removable limit.
  CHECK(spectral_sample(p, 1.0).near_singular);
  const auto s1 = spectral_limit(p, 1.0);
  CHECK(std::abs(s1.qb - Complex(0, -1) / (2.0 + kI * kSqrt2)) < 1e-9);
  CHECK(std::abs(std::abs(s1.qb) - 1.0 / std::sqrt(6.0)) < 1e-9);

  const auto s0 = spectral_limit(p, 0.0);
  CHECK(std::abs(s0.qb + 1.0 / std::sqrt(2.0)) < 1e-9);

  const Complex kg(0.3, 0.2);
  const auto sg = spectral_sample(p, kg);
  const Complex sn = std::sin(2.0 * kg * kg * p.tau());
  CHECK(std::abs(sg.g + 4.0 * sn * sn) < 1e-8);

  for (Complex k : {Complex(0.0, 2.05), Complex(0.37, 0.61), Complex(-1.3, 0.2), Complex(0.9, -0.45)}) {
    const auto s = spectral_sample(p, k);
    CHECK(std::abs(s.qb - fd.qb(k)) < 1e-8 * std::abs(fd.qb(k)) + 1e-12);
    CHECK(std::abs(s.pb - fd.pb(k)) < 1e-8 * std::abs(fd.pb(k)) + 1e-12);
    CHECK(std::abs(s.ab2 - fd.ab2(k)) < 1e-8 * std::abs(fd.ab2(k)));
  }
}

TEST_CASE("lattice point k = 2i is degenerate for omega = 1") {
  const auto p = PeriodicPair::exponential(1.0, 1.0, -kSqrt2);
  const Monodromy z = monodromy(p, Complex(0.0, 2.0), 1e-11);
  CHECK_THROWS_AS(pb(z, sqrt_g_admissible(z.k, p.tau())), Error);
  CHECK(spectral_sample(p, Complex(0.0, 2.0)).near_singular);
}

TEST_CASE("product identity A^2 (A^2 - 1) = P(k) conj(P(conj k))") {
  // Requires G = -4 sin^2(2k^2 tau), so only admissible pairs qualify.
  const auto pairs = {PeriodicPair::exponential(1.0, 1.0, -kSqrt2), make_exponential_family_d(0.7, 2.0),
                      make_exponential_family_d(2.0, 0.3)};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (const auto& p : pairs) {
    for (int i = 0; i < 6; ++i) {
      const Complex k(u(rng), 0.5 * u(rng));
      const auto a = spectral_sample(p, k);
      const auto b = spectral_sample(p, std::conj(k));
      const Complex lhs = a.ab2 * (a.ab2 - 1.0);
      const Complex rhs = a.pb * std::conj(b.pb);
      CHECK(std::abs(lhs - rhs) < 1e-7 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("P^b leading asymptotics") {
  const auto p = PeriodicPair::exponential(1.0, 1.0, -kSqrt2);
  const Complex k = 12.0 * std::polar(1.0, kPi / 8.0);
  const auto s = spectral_sample(p, k);
  CHECK(std::abs(s.pb * k - Complex(0, 0.5)) < 0.05);
}

TEST_CASE("tracked square root squares to G") {
  const auto p = PeriodicPair::exponential(1.0, -4.0, Complex(0.0, std::sqrt(2.0)));
  std::vector<Complex> path;
  for (int i = 0; i <= 20; ++i) path.push_back(Complex(0.1 + 0.05 * i, 0.3));
  const auto r = sqrt_g_tracked(p, path);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Complex g = g_of_k(monodromy(p, path[i], 1e-11));
    CHECK(std::abs(r[i] * r[i] - g) < 1e-8 * std::max(1.0, std::abs(g)));
    if (i > 0) CHECK(std::abs(r[i] - r[i - 1]) < 0.5 * std::abs(r[i] + r[i - 1]));
  }
}
