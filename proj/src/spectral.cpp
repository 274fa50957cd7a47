#include "hnls/spectral.hpp"

#include <cmath>
#include <limits>

#include "hnls/error.hpp"
#include "hnls/lattice.hpp"

namespace hnls {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

// sqrt_g expressed in the same scaling as z.z.
Complex scaled_sqrt_g(const Monodromy& z, double tau) {
  const Complex phase = 2.0 * z.k * z.k * tau;
  return 2.0 * kI * scaled_sin(phase) * std::exp(std::abs(phase.imag()) - z.log_scale);
}

Complex rescale(const Monodromy& z, Complex sqrt_g) {
  return z.log_scale == 0.0 ? sqrt_g : sqrt_g * std::exp(-z.log_scale);
}

void require_nonzero(Complex den, const Monodromy& z, double rel, const char* what) {
  if (!(std::abs(den) > rel * std::max(1.0, max_abs(z.z))))
    throw Error(ErrorKind::DegenerateDenominator, std::string(what) + " denominator vanishes at this k");
}

}  // namespace

Complex g_of_k(const Monodromy& z) {
  const Complex tr = z.z.trace();
  if (z.log_scale == 0.0) return tr * tr - 4.0;
  const double s = std::exp(z.log_scale);
  return tr * tr * s * s - 4.0;
}

Complex sqrt_g_admissible(Complex k, double tau) { return 2.0 * kI * std::sin(2.0 * k * k * tau); }

Complex qb(const Monodromy& z, Complex sqrt_g) {
  const Complex den = z.z(0, 0) - z.z(1, 1) - rescale(z, sqrt_g);
  require_nonzero(den, z, 1e-12, "Q^b");
  return -2.0 * z.z(0, 1) / den;
}

Complex pb(const Monodromy& z, Complex sqrt_g) {
  const Complex s = rescale(z, sqrt_g);
  require_nonzero(s, z, 1e-12, "P^b");
  return -z.z(1, 0) / s;
}

Complex ab_squared(const Monodromy& z, Complex sqrt_g) {
  const Complex s = rescale(z, sqrt_g);
  require_nonzero(s, z, 1e-12, "(A^b)^2");
  return -(z.z(0, 0) - z.z(1, 1) - s) / (2.0 * s);
}

bool near_singular(Complex k, double omega, double guard) {
  if (guard < 0.0) guard = 1e-3 * std::sqrt(omega);
  return lattice_distance(k, omega) < guard;
}

SpectralSample spectral_from_monodromy(const Monodromy& z, double tau, double omega, const SpectralOptions& opts) {
  SpectralSample s;
  s.k = z.k;
  s.est_error = z.est_error;
  s.near_singular = near_singular(z.k, omega, opts.guard);
  s.g = g_of_k(z);
  s.sqrt_g = sqrt_g_admissible(z.k, tau);
  const Complex sg = scaled_sqrt_g(z, tau);
  const double floor = opts.degenerate_rel * std::max(1.0, max_abs(z.z));
  const Complex dq = z.z(0, 0) - z.z(1, 1) - sg;
  if (std::abs(dq) > floor) {
    s.qb = -2.0 * z.z(0, 1) / dq;
  } else {
    s.qb = Complex(kNaN, kNaN);
    s.near_singular = true;
  }
  if (std::abs(sg) > floor) {
    s.pb = -z.z(1, 0) / sg;
    s.ab2 = -dq / (2.0 * sg);
  } else {
    s.pb = s.ab2 = Complex(kNaN, kNaN);
    s.near_singular = true;
  }
  return s;
}

SpectralSample spectral_sample(const PeriodicPair& pair, Complex k, const SpectralOptions& opts) {
  return spectral_from_monodromy(monodromy(pair, k, opts.monodromy), pair.tau(), pair.omega(), opts);
}

SpectralSample spectral_limit(const PeriodicPair& pair, Complex k, double radius, int nodes,
                              const SpectralOptions& opts) {
  const double omega = pair.omega();
  if (radius <= 0.0) radius = 0.05 * std::sqrt(omega) / (1.0 + std::abs(k));
  SpectralSample out;
  out.k = k;
  out.near_singular = near_singular(k, omega, opts.guard);
  out.sqrt_g = sqrt_g_admissible(k, pair.tau());
  for (int j = 0; j < nodes; ++j) {
    const Complex kj = k + radius * std::polar(1.0, 2.0 * kPi * (j + 0.5) / nodes);
    const SpectralSample s = spectral_sample(pair, kj, opts);
    if (s.near_singular && (std::isnan(s.qb.real()) || std::isnan(s.pb.real())))
      throw Error(ErrorKind::DegenerateDenominator, "limit circle passes through a degenerate point");
    out.g += s.g;
    out.qb += s.qb;
    out.pb += s.pb;
    out.ab2 += s.ab2;
    out.est_error = std::max(out.est_error, s.est_error);
  }
  out.g /= nodes;
  out.qb /= nodes;
  out.pb /= nodes;
  out.ab2 /= nodes;
  return out;
}

std::vector<Complex> sqrt_g_tracked(const PeriodicPair& pair, const std::vector<Complex>& path,
                                    const MonodromyOptions& opts) {
  std::vector<Complex> out;
  out.reserve(path.size());
  for (const Complex k : path) {
    const Complex r = std::sqrt(g_of_k(monodromy(pair, k, opts)));
    if (out.empty()) {
      out.push_back(r);
    } else {
      out.push_back(std::abs(r - out.back()) <= std::abs(-r - out.back()) ? r : -r);
    }
  }
  return out;
}

}  // namespace hnls
