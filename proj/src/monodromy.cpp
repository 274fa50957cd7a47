#include "hnls/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hnls/error.hpp"
#include "hnls/lattice.hpp"
#include "hnls/quadrature.hpp"

namespace hnls {

namespace {

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

struct Generator {
  Complex k;
  Complex two_k;
  Complex diag;  // -2ik^2 - gamma without the |g0|^2 part

  Mat2 operator()(const BoundaryValues& b, double gamma) const {
    const double g2 = std::norm(b.g0);
    Mat2 a;
    a(0, 0) = diag - kI * g2;
    a(0, 1) = two_k * b.g0 + kI * b.g1;
    a(1, 0) = two_k * std::conj(b.g0) - kI * std::conj(b.g1);
    a(1, 1) = -diag + kI * g2 - 2.0 * gamma;
    return a;
  }
};

}  // namespace

Mat2 Monodromy::full() const { return z * std::exp(log_scale); }

Mat2 vb_matrix(const PeriodicPair& pair, double t, Complex k) {
  const BoundaryValues b = pair.eval(t);
  const double g2 = std::norm(b.g0);
  Mat2 v;
  v << -kI * g2, 2.0 * k * b.g0 + kI * b.g1, 2.0 * k * std::conj(b.g0) - kI * std::conj(b.g1), kI * g2;
  return v;
}

Mat2 integrate_fixed(const PeriodicPair& pair, Complex k, long n, double gamma) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "step count must be positive");
  const double h = pair.tau() / static_cast<double>(n);
  const Generator gen{k, 2.0 * k, -2.0 * kI * k * k - gamma};
  BoundaryStepper stepper(pair, h / 2.0);
  Mat2 psi = Mat2::Identity();
  Mat2 comp = Mat2::Zero();  // Kahan compensation for the accumulated update
  Mat2 a0 = gen(stepper.current(), gamma);
  for (long i = 0; i < n; ++i) {
    stepper.advance();
    const Mat2 ah = gen(stepper.current(), gamma);
    stepper.advance();
    const Mat2 a1 = gen(stepper.current(), gamma);
    const Mat2 k1 = a0 * psi;
    const Mat2 k2 = ah * (psi + (h / 2.0) * k1);
    const Mat2 k3 = ah * (psi + (h / 2.0) * k2);
    const Mat2 k4 = a1 * (psi + h * k3);
    const Mat2 incr = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4) - comp;
    const Mat2 next = psi + incr;
    comp = (next - psi) - incr;
    psi = next;
    a0 = a1;
  }
  return psi;
}

Monodromy monodromy(const PeriodicPair& pair, Complex k, const MonodromyOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  const double tau = pair.tau();
  const double growth = std::abs((2.0 * k * k).imag());
  const double gamma = growth * tau > opts.scale_threshold ? growth : 0.0;
  const double kk = std::norm(k);
  long n = std::max(16L, static_cast<long>(std::ceil(opts.steps_per_unit * (1.0 + kk) * tau)));

  Mat2 z1 = integrate_fixed(pair, k, n, gamma);
  while (true) {
    if (2 * n > opts.max_steps)
      throw Error(ErrorKind::NonConvergence,
                  "monodromy at k=(" + std::to_string(k.real()) + "," + std::to_string(k.imag()) +
                      ") did not reach tol within the step budget");
    const Mat2 z2 = integrate_fixed(pair, k, 2 * n, gamma);
    const double scale = std::max(1.0, max_abs(z2));
    const double est = max_abs(z2 - z1) / 15.0 / scale;
    const Mat2 zext = (16.0 * z2 - z1) / 15.0;
    const double e2 = std::exp(-2.0 * gamma * tau);
    const double nz = max_abs(zext);
    const double det_err = std::abs(zext.determinant() - e2) / std::max(e2, nz * nz);
    if (est <= opts.tol && det_err <= opts.tol) {
      Monodromy m;
      m.k = k;
      m.z = zext;
      m.log_scale = gamma * tau;
      m.est_error = est;
      m.det_error = det_err;
      m.steps = 2 * n;
      return m;
    }
    long next = 2 * n;
    if (est > opts.tol) {
      const double factor = std::min(32.0, 1.1 * std::pow(est / opts.tol, 0.25));
      next = std::max(next, static_cast<long>(std::ceil(2.0 * n * factor)));
    }
    if (next == 2 * n) {
      z1 = z2;
      n = next;
    } else {
      n = next;
      if (n > opts.max_steps)
        throw Error(ErrorKind::NonConvergence, "monodromy step budget exceeded");
      z1 = integrate_fixed(pair, k, n, gamma);
    }
  }
}

double eta1(const PeriodicPair& pair, double t) {
  if (t == 0.0) return 0.0;
  double max_freq = 0.0;
  for (const auto& m : pair.g0_modes()) max_freq = std::max(max_freq, std::abs(m.freq));
  for (const auto& m : pair.g1_modes()) max_freq = std::max(max_freq, std::abs(m.freq));
  const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * max_freq * std::abs(t) / kPi)));
  const GaussRule& rule = gauss_legendre(32);
  const double w = t / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * w;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const BoundaryValues b = pair.eval(mid + 0.5 * w * rule.nodes[i]);
      sum += rule.weights[i] * (std::conj(b.g0) * b.g1).imag();
    }
  }
  return 0.5 * w * sum;
}

AsymptoticsReport check_z_asymptotics(const PeriodicPair& pair, const std::vector<Complex>& k_samples,
                                      double tol, double guard) {
  const double omega = pair.omega();
  if (guard < 0.0) guard = 1e-3 * std::sqrt(omega);
  const double tau = pair.tau();
  AsymptoticsReport rep;
  rep.eta1_tau = eta1(pair, tau);
  const BoundaryValues b0 = pair.eval(0.0);
  MonodromyOptions opts;
  opts.tol = tol;
  for (const Complex k : k_samples) {
    if (lattice_distance(k, omega) < guard)
      throw Error(ErrorKind::SampleTooClose, "asymptotics sample lies inside a lattice guard");
    const Monodromy m = monodromy(pair, k, opts);
    const Complex phase = 2.0 * k * k * tau;
    const double g = std::abs(phase.imag());
    const Complex em = std::exp(-kI * phase - g);
    const Complex ep = std::exp(kI * phase - g);
    const Complex s = scaled_sin(phase);
    Mat2 trunc;
    trunc << em - kI * rep.eta1_tau * em / k, b0.g0 * s / k, std::conj(b0.g0) * s / k,
        ep + kI * rep.eta1_tau * ep / k;
    const Mat2 zs = m.z * std::exp(m.log_scale - g);
    rep.samples.push_back({k, max_abs(zs - trunc)});
  }
  return rep;
}

}  // namespace hnls
