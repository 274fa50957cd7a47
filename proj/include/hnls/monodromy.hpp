#pragma once

#include <vector>

#include "hnls/boundary.hpp"
#include "hnls/types.hpp"

namespace hnls {

/// Monodromy matrix Z(k) = psi(tau, k) of the background t-part.
///
/// For large |Im k^2| the matrix is stored scaled: Z = exp(log_scale) * z.
/// log_scale is |Im 2k^2| * tau when scaling is active, 0 otherwise.
struct Monodromy {
  Complex k;
  Mat2 z;
  double log_scale = 0.0;
  double est_error = 0.0;  // relative to max(1, |z|)
  double det_error = 0.0;  // |det Z - 1| / max(1, |Z|^2)
  long steps = 0;

  /// Unscaled Z; overflows for very large log_scale.
  Mat2 full() const;
};

struct MonodromyOptions {
  double tol = 1e-10;
  double steps_per_unit = 8.0;  // C in ceil(C (1 + |k|^2) tau)
  long max_steps = 1L << 24;
  /// Scale out e^{|Im 2k^2| t} once |Im 2k^2| tau exceeds this.
  double scale_threshold = 20.0;
};

Mat2 vb_matrix(const PeriodicPair& pair, double t, Complex k);

/// Classical RK4 with n equal steps; the generator is shifted by -gamma I.
Mat2 integrate_fixed(const PeriodicPair& pair, Complex k, long n, double gamma = 0.0);

/// Step-halving RK4 until the Richardson estimate and |det Z - 1| are below tol.
/// The returned matrix is the Richardson-extrapolated value.
Monodromy monodromy(const PeriodicPair& pair, Complex k, const MonodromyOptions& opts = {});
inline Monodromy monodromy(const PeriodicPair& pair, Complex k, double tol) {
  MonodromyOptions o;
  o.tol = tol;
  return monodromy(pair, k, o);
}

/// eta_1(t) = int_0^t Im(conj(g0) g1) dt', by Gauss-Legendre quadrature.
double eta1(const PeriodicPair& pair, double t);

struct AsymptoticSample {
  Complex k;
  double deviation;  // |Z - Z_trunc| / e^{|Im 2k^2| tau}
};

struct AsymptoticsReport {
  std::vector<AsymptoticSample> samples;
  double eta1_tau = 0.0;
};

/// Compares Z(k) with diag(e^{-2ik^2 tau}, e^{2ik^2 tau}) plus its 1/k correction.
AsymptoticsReport check_z_asymptotics(const PeriodicPair& pair, const std::vector<Complex>& k_samples,
                                      double tol = 1e-11, double guard = -1.0);

}  // namespace hnls
