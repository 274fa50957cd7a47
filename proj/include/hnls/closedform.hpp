#pragma once

#include <string>
#include <vector>

#include "hnls/types.hpp"

namespace hnls {

struct ExponentialTriple {
  double alpha = 1.0;
  double omega = 1.0;
  Complex c{0.0, 0.0};
};

/// Omega^2(k) = 4k^4 + 2 omega k^2 + 4 alpha Im(c) k + (omega/2 + alpha^2)^2 - |c|^2.
Complex omega_squared(const ExponentialTriple& tr, Complex k);

struct OmegaH {
  Complex omega;
  Complex h;
};

/// Omega continued from +infinity on the real axis (Omega ~ 2k^2) horizontally
/// from Re k = +R to k, so the cuts run leftwards from the branch points.
OmegaH omega_h(const ExponentialTriple& tr, Complex k);

/// Q^b = iH / (2 alpha k - i conj(c)).
Complex qb_exponential(const ExponentialTriple& tr, Complex k);

/// Z(k) from the gauge diag(e^{i omega t/2}, e^{-i omega t/2}), which makes the
/// t-part autonomous: Z = E(tau) exp(M tau).
Mat2 exponential_monodromy(const ExponentialTriple& tr, Complex k);

enum class Family { FamilyA, FamilyB, FamilyC, FamilyD_plus, FamilyD_minus, FamilyE, NoneOfThese };
enum class ClassVerdict { EventuallyAdmissible, NotAdmissible };

std::string_view to_string(Family f);
std::string_view to_string(ClassVerdict v);

struct Classification {
  Family family = Family::NoneOfThese;
  ClassVerdict verdict = ClassVerdict::NotAdmissible;
  double K = 0.0;    // family parameter for A, B, C, E where defined
  double residual = 0.0;
};

Classification classify(const ExponentialTriple& tr, double tol = 1e-9);

/// Triples built from the family parametrizations; used for sweeps.
ExponentialTriple family_a_triple(double alpha, double omega, int sign);
/// Returns false when the parameters give a negative radicand for Re c.
bool family_be_triple(double K, double omega, double c2, int sign, ExponentialTriple& out);
ExponentialTriple family_c_triple(double alpha, double omega);
ExponentialTriple family_d_triple(double alpha, double omega, int sign);

/// Explicit quarter-plane solution for c = -alpha sqrt(omega + alpha^2), omega > 0.
Complex u_family_d(double alpha, double omega, double x, double t);
/// The negative x at which the Family-D denominator vanishes.
double singularity_x(double alpha, double omega);

/// The two-pole example u1/u2.
Complex u_section5(double x, double t);
Complex u_section5_numerator(double x, double t);
Complex u_section5_denominator(double x, double t);
/// Real zeros of u2(x, 0) in [x_lo, x_hi], located by sign scan and bisection.
std::vector<double> section5_singular_x(double x_lo = -4.0, double x_hi = 2.0, int scan = 6000);

struct LevelSetPoint {
  Complex k;
  bool re_zero;  // true for Re Omega = 0, false for Im Omega = 0
};

/// Grid samples where Re Omega or Im Omega changes sign between neighbours.
std::vector<LevelSetPoint> omega_levelsets(const ExponentialTriple& tr, double x0, double x1, double y0, double y1,
                                           int nx, int ny);

}  // namespace hnls
