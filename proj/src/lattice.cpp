#include "hnls/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hnls {

LatticePoint nearest_lattice_point(Complex k, double omega) {
  LatticePoint best;
  double best_d = std::numeric_limits<double>::infinity();
  auto consider = [&](double coord, bool imaginary) {
    const long c = std::lround(4.0 * coord * coord / omega);
    for (long m = std::max(0L, c - 1); m <= c + 1; ++m) {
      const double r = std::sqrt(static_cast<double>(m) * omega) / 2.0;
      const Complex base = imaginary ? Complex(0.0, r) : Complex(r, 0.0);
      for (const Complex cand : {base, -base}) {
        const double d = std::abs(k - cand);
        if (d < best_d) {
          best_d = d;
          best = {static_cast<int>(imaginary ? -m : m), cand};
        }
      }
    }
  };
  consider(k.real(), false);
  consider(k.imag(), true);
  return best;
}

double lattice_distance(Complex k, double omega) { return std::abs(k - nearest_lattice_point(k, omega).k); }

Complex scaled_sin(Complex z) {
  const double y = z.imag();
  const Complex e1 = std::exp(kI * z - std::abs(y));
  const Complex e2 = std::exp(-kI * z - std::abs(y));
  return (e1 - e2) / (2.0 * kI);
}

Complex scaled_cos(Complex z) {
  const double y = z.imag();
  return (std::exp(kI * z - std::abs(y)) + std::exp(-kI * z - std::abs(y))) / 2.0;
}

}  // namespace hnls
