#pragma once

#include <vector>

#include "hnls/boundary.hpp"
#include "hnls/monodromy.hpp"
#include "hnls/types.hpp"

namespace hnls {

struct SpectralSample {
  Complex k;
  Complex g;       // (tr Z)^2 - 4; may overflow far from the real axis
  Complex sqrt_g;  // 2i sin(2k^2 tau)
  Complex qb;
  Complex pb;
  Complex ab2;
  bool near_singular = false;  // inside a lattice guard, or a denominator vanished
  double est_error = 0.0;
};

struct SpectralOptions {
  MonodromyOptions monodromy;
  double guard = -1.0;              // default 1e-3 sqrt(omega)
  double degenerate_rel = 1e-12;    // denominators below this times max(1, |z|) are zero
};

Complex g_of_k(const Monodromy& z);
Complex sqrt_g_admissible(Complex k, double tau);

/// The quotients take sqrt_g unscaled; scaled monodromies are handled internally.
Complex qb(const Monodromy& z, Complex sqrt_g);
Complex pb(const Monodromy& z, Complex sqrt_g);
Complex ab_squared(const Monodromy& z, Complex sqrt_g);

/// Evaluates all spectral functions at k; values whose denominators vanish are NaN and flagged.
SpectralSample spectral_sample(const PeriodicPair& pair, Complex k, const SpectralOptions& opts = {});

/// Computes the spectral functions from an existing monodromy (same conventions).
SpectralSample spectral_from_monodromy(const Monodromy& z, double tau, double omega, const SpectralOptions& opts = {});

/// Regular part at k: the mean of each spectral function over a circle of the given
/// radius (default: a quarter of the guard-free gap). Equals the value where the
/// function is analytic, and the removable limit at lattice points.
SpectralSample spectral_limit(const PeriodicPair& pair, Complex k, double radius = -1.0, int nodes = 32,
                              const SpectralOptions& opts = {});

bool near_singular(Complex k, double omega, double guard = -1.0);

/// Square root of (tr Z)^2 - 4 continued along a path by choosing, at each node,
/// the sign closest to the previous value. Diagnostic only.
std::vector<Complex> sqrt_g_tracked(const PeriodicPair& pair, const std::vector<Complex>& path,
                                    const MonodromyOptions& opts = {});

}  // namespace hnls
