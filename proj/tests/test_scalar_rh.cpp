#include <cmath>

#include "doctest.h"
#include "hnls/error.hpp"
#include "hnls/scalar_rh.hpp"
#include "oracles.hpp"

using namespace hnls;

namespace {

// Residue calculus for f(s) = 1/(s^2 + 1).
Complex lorentz_oracle(Complex k) {
  Complex v = 1.0 / (2.0 * kI * (kI - k));
  if (k.imag() > 0.0) v += 1.0 / (k * k + 1.0);
  return v;
}

PbModel family_d_model(double alpha, double omega) {
  const oracle::FamilyD fd{alpha, omega};
  const Complex k1 = fd.k1(), k2 = fd.k2();
  const Complex c = -(alpha / (2.0 * kI));
  // partial fractions of c (k + k2) / ((k - k1)(k + k1))
  return {{k1, -k1}, {c * (k1 + k2) / (2.0 * k1), c * (-k1 + k2) / (-2.0 * k1)}};
}

}  // namespace

TEST_CASE("Cauchy transform of a Lorentzian") {
  const auto f = [](double s) { return Complex(1.0 / (s * s + 1.0), 0.0); };
  CHECK(std::abs(cauchy_transform(f, Complex(0, 2)) - 1.0 / 6.0) < 1e-10);
  for (Complex k : {Complex(0.3, 0.05), Complex(-2.0, 0.5), Complex(1.0, -0.2), Complex(0.1, 0.002)})
    CHECK(std::abs(cauchy_transform(f, k) - lorentz_oracle(k)) < 1e-10);
  CHECK(cauchy_transform([](double) { return Complex(0.0); }, Complex(0.2, 1.0)) == Complex(0.0));
  CHECK_THROWS_AS(cauchy_transform(f, Complex(0.3, 1e-5)), Error);
}

TEST_CASE("Cauchy transform conjugation symmetry for real f") {
  const auto f = [](double s) { return Complex(std::exp(-s * s) * (1.0 + s), 0.0); };
  for (Complex k : {Complex(0.4, 0.3), Complex(-1.2, 0.01)}) {
    const Complex a = cauchy_transform(f, k);
    const Complex b = cauchy_transform(f, std::conj(k));
    CHECK(std::abs(std::conj(b) + a) < 1e-10);
  }
}

TEST_CASE("model residues sum to the asymptotic coefficient") {
  const PbModel m = family_d_model(1.0, 1.0);
  CHECK(std::abs(m.residue_sum() - (-1.0 / (2.0 * kI))) < 1e-15);
  const oracle::FamilyD fd{1.0, 1.0};
  CHECK(std::abs(m.eval(Complex(0.3, 0.7)) - fd.pb(Complex(0.3, 0.7))) < 1e-15);
}

TEST_CASE("family D scalar functions") {
  for (auto [al, w] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}, std::pair{2.0, 0.3}}) {
    const oracle::FamilyD fd{al, w};
    const PbModel m = family_d_model(al, w);
    const ScalarFunctions sf = ScalarFunctions::from_model(m, w);
    for (Complex k : {Complex(0.0, 2.0), Complex(0.5, 0.1), Complex(-1.5, 0.3), Complex(3.0, 1.0), fd.k1()})
      CHECK(std::abs(sf.a(k) - fd.a(k)) < 1e-9);
    for (double s : {-2.0, -0.3, 0.0, 0.7, 4.0}) {
      const Complex a = sf.a_boundary(s);
      const Complex b = sf.b_boundary(s);
      const Complex q = fd.qb(s);
      CHECK(std::abs(a - fd.a(s)) < 1e-7);
      CHECK(std::abs(std::norm(a) - std::norm(b) - 1.0) < 1e-7);
      CHECK(std::abs(std::norm(a) * (1.0 - std::norm(q)) - 1.0) < 1e-7);
      CHECK(std::abs(sf.h_boundary(s) + fd.pb(s) / (fd.a(s) * fd.a(s))) < 1e-7);
    }
    const PoleData pd = h_residues(sf, m, w);
    REQUIRE(pd.poles.size() == 1);
    CHECK(std::abs(pd.residues[0] - fd.h1()) < 1e-10);
  }
  const ScalarFunctions sf = ScalarFunctions::from_model(family_d_model(1.0, 1.0), 1.0);
  CHECK(std::abs(sf.a(Complex(0, 2)) - (2.0 + 1.0 / std::sqrt(2.0)) / 2.5) < 1e-10);
  CHECK(std::abs(std::norm(sf.a_boundary(0.0)) - 2.0) < 1e-7);
}

TEST_CASE("zero data") {
  const ScalarFunctions sf = ScalarFunctions::from_model(PbModel{}, 1.0);
  CHECK(std::abs(sf.a(Complex(0.2, 0.5)) - 1.0) < 1e-15);
  CHECK(h_residues(sf, PbModel{}, 1.0).poles.empty());
}
