#pragma once

#include "hnls/types.hpp"

namespace hnls {

/// Point of the zero set of sin(2k^2 tau), tau = 2 pi / omega:
/// k^2 = n omega / 4, i.e. +-sqrt(n omega)/2 (n >= 0) or +-i sqrt(|n| omega)/2 (n < 0).
struct LatticePoint {
  int n = 0;  // signed index: k^2 = n omega / 4
  Complex k;
};

LatticePoint nearest_lattice_point(Complex k, double omega);
double lattice_distance(Complex k, double omega);

/// Upper imaginary lattice point i sqrt(n omega)/2.
inline Complex upper_lattice(int n, double omega) { return Complex(0.0, std::sqrt(n * omega) / 2.0); }

/// sin(z) e^{-|Im z|}, bounded for all z.
Complex scaled_sin(Complex z);
/// cos(z) e^{-|Im z|}.
Complex scaled_cos(Complex z);

}  // namespace hnls
