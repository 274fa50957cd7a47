#include "hnls/closedform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "hnls/error.hpp"

namespace hnls {

Complex omega_squared(const ExponentialTriple& tr, Complex k) {
  const double a = tr.alpha;
  const double b = tr.omega / 2.0 + a * a;
  const Complex k2 = k * k;
  return 4.0 * k2 * k2 + 2.0 * tr.omega * k2 + 4.0 * a * tr.c.imag() * k + b * b - std::norm(tr.c);
}

namespace {

struct Continuation {
  const ExponentialTriple& tr;
  Complex value;

  void check(Complex p, Complex sq) const {
    if (std::abs(sq) < 1e-12 * (1.0 + std::pow(std::abs(p), 4)))
      throw Error(ErrorKind::OnBranchCut, "continuation path of Omega meets a branch point");
  }

  void step(Complex from, Complex to, int depth) {
    const Complex sq = omega_squared(tr, to);
    check(to, sq);
    Complex r = std::sqrt(sq);
    if (std::abs(r - value) > std::abs(r + value)) r = -r;
    if (std::abs(r - value) > 0.25 * std::max(std::abs(value), 1e-8) && depth < 40) {
      const Complex mid = 0.5 * (from + to);
      step(from, mid, depth + 1);
      step(mid, to, depth + 1);
      return;
    }
    value = r;
  }

  void segment(Complex a, Complex b, int n) {
    for (int i = 1; i <= n; ++i) {
      const Complex p0 = a + (b - a) * (static_cast<double>(i - 1) / n);
      const Complex p1 = a + (b - a) * (static_cast<double>(i) / n);
      step(p0, p1, 0);
    }
  }
};

}  // namespace

OmegaH omega_h(const ExponentialTriple& tr, Complex k) {
  const double a = tr.alpha;
  const double b = tr.omega / 2.0 + a * a;
  const double bound = 1.0 + std::max({std::abs(tr.omega) / 2.0, std::abs(a * tr.c.imag()), std::abs(b * b - std::norm(tr.c)) / 4.0});
  const double R = 4.0 + 2.0 * std::max(std::abs(k), bound);
  Continuation cont{tr, std::sqrt(omega_squared(tr, Complex(R, 0.0)))};
  if (cont.value.real() < 0.0) cont.value = -cont.value;
  cont.segment(Complex(R, 0.0), Complex(R, k.imag()), 256);
  cont.segment(Complex(R, k.imag()), k, 512);
  return {cont.value, cont.value - 2.0 * k * k - a * a - tr.omega / 2.0};
}

Complex qb_exponential(const ExponentialTriple& tr, Complex k) {
  const OmegaH oh = omega_h(tr, k);
  return kI * oh.h / (2.0 * tr.alpha * k - kI * std::conj(tr.c));
}

Mat2 exponential_monodromy(const ExponentialTriple& tr, Complex k) {
  const double tau = 2.0 * kPi / std::abs(tr.omega);
  const Complex d = 2.0 * k * k + tr.omega / 2.0 + tr.alpha * tr.alpha;
  Mat2 m;
  m << -kI * d, 2.0 * k * tr.alpha + kI * tr.c, 2.0 * k * tr.alpha - kI * std::conj(tr.c), kI * d;
  const Complex om = std::sqrt(-(m * m)(0, 0));
  const Complex sinc = std::abs(om * tau) < 1e-8 ? Complex(tau) * (1.0 - om * om * tau * tau / 6.0) : std::sin(om * tau) / om;
  const Mat2 e = std::cos(om * tau) * Mat2::Identity() + sinc * m;
  Mat2 gauge = Mat2::Zero();
  gauge(0, 0) = std::exp(kI * tr.omega * tau / 2.0);
  gauge(1, 1) = std::exp(-kI * tr.omega * tau / 2.0);
  return gauge * e;
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::FamilyA: return "FamilyA";
    case Family::FamilyB: return "FamilyB";
    case Family::FamilyC: return "FamilyC";
    case Family::FamilyD_plus: return "FamilyD_plus";
    case Family::FamilyD_minus: return "FamilyD_minus";
    case Family::FamilyE: return "FamilyE";
    case Family::NoneOfThese: return "NoneOfThese";
  }
  return "NoneOfThese";
}

std::string_view to_string(ClassVerdict v) {
  return v == ClassVerdict::EventuallyAdmissible ? "EventuallyAdmissible" : "NotAdmissible";
}

namespace {

// Real positive roots of 4K^3 + omega K + q = 0.
std::vector<double> positive_cubic_roots(double omega, double q) {
  const double p3 = omega / 4.0 / 3.0;
  const double q2 = q / 4.0 / 2.0;
  const Complex disc = std::sqrt(Complex(q2 * q2 + p3 * p3 * p3, 0.0));
  Complex u = std::pow(-q2 + disc, 1.0 / 3.0);
  if (std::abs(u) < 1e-300) u = std::pow(-q2 - disc, 1.0 / 3.0);
  std::vector<double> out;
  const Complex w = std::polar(1.0, 2.0 * kPi / 3.0);
  for (int j = 0; j < 3; ++j) {
    const Complex uj = u * std::pow(w, j);
    const Complex root = std::abs(uj) < 1e-300 ? Complex(0.0) : uj - p3 / uj;
    double K = root.real();
    if (std::abs(root.imag()) > 1e-6 * (1.0 + std::abs(K))) continue;
    for (int it = 0; it < 20; ++it) {
      const double f = 4.0 * K * K * K + omega * K + q;
      const double df = 12.0 * K * K + omega;
      if (df == 0.0) break;
      K -= f / df;
    }
    if (K > 0.0) out.push_back(K);
  }
  return out;
}

}  // namespace

Classification classify(const ExponentialTriple& tr, double tol) {
  const double a = tr.alpha;
  const double w = tr.omega;
  const Complex c = tr.c;
  const double scale = std::max(1.0, std::abs(c));
  Classification out;
  if (!(a > 0.0)) return out;

  if (w + a * a >= -tol) {
    const double r = a * std::sqrt(std::max(0.0, w + a * a));
    const double em = std::abs(c + r);
    const double ep = std::abs(c - r);
    if (em <= tol * scale) {
      out.family = Family::FamilyD_minus;
      out.residual = em;
      out.verdict = w > 0.0 ? ClassVerdict::EventuallyAdmissible : ClassVerdict::NotAdmissible;
      return out;
    }
    if (ep <= tol * scale) {
      out.family = Family::FamilyD_plus;
      out.residual = ep;
      return out;
    }
  }
  if (w < -3.0 * a * a) {
    const double e = std::abs(c - kI * a * std::sqrt(-2.0 * a * a - w));
    if (e <= tol * scale) {
      out.family = Family::FamilyC;
      out.residual = e;
      out.K = std::sqrt(std::abs(w) / 12.0);
      return out;
    }
  }
  if (w >= -3.0 * a * a - tol && w < 0.0) {
    const double re = std::sqrt(std::max(0.0, std::pow(w + 3.0 * a * a, 3) / (27.0 * a * a)));
    const double im = std::pow(std::abs(w), 1.5) / (3.0 * std::sqrt(3.0) * a);
    const double e = std::hypot(std::abs(c.real()) - re, c.imag() - im);
    if (e <= tol * scale) {
      out.family = Family::FamilyA;
      out.residual = e;
      out.K = std::sqrt(std::abs(w) / 12.0);
      return out;
    }
  }
  const double c2 = c.imag();
  if (c2 != 0.0) {
    for (const double K : positive_cubic_roots(w, a * c2)) {
      const double rad = std::pow(a * a + w / 2.0, 2) - c2 * c2 - 2.0 * K * K * (6.0 * K * K + w);
      const double e = std::abs(c.real() * c.real() - rad) / scale;
      if (rad < -tol * scale || e > tol * scale) continue;
      const double bound = -(4.0 * K * K + w) / 2.0;
      const double eps = tol * std::max(1.0, K * K);
      if (w > -12.0 * K * K && w < -4.0 * K * K && c2 > 0.0 && c2 <= bound + eps) {
        out.family = Family::FamilyB;
      } else if (w > -4.0 * K * K && w <= -3.0 * K * K + eps && c2 >= bound - eps && c2 < 0.0) {
        out.family = Family::FamilyE;
      } else {
        continue;
      }
      out.K = K;
      out.residual = e;
      return out;
    }
  }
  return out;
}

ExponentialTriple family_a_triple(double alpha, double omega, int sign) {
  const double re = std::sqrt(std::pow(omega + 3.0 * alpha * alpha, 3) / (27.0 * alpha * alpha));
  const double im = std::pow(std::abs(omega), 1.5) / (3.0 * std::sqrt(3.0) * alpha);
  return {alpha, omega, Complex(sign >= 0 ? re : -re, im)};
}

bool family_be_triple(double K, double omega, double c2, int sign, ExponentialTriple& out) {
  const double alpha = -(4.0 * K * K * K + omega * K) / c2;
  if (!(alpha > 0.0)) return false;
  const double rad = std::pow(alpha * alpha + omega / 2.0, 2) - c2 * c2 - 2.0 * K * K * (6.0 * K * K + omega);
  if (rad < 0.0) return false;
  out = {alpha, omega, Complex(sign >= 0 ? std::sqrt(rad) : -std::sqrt(rad), c2)};
  return true;
}

ExponentialTriple family_c_triple(double alpha, double omega) {
  return {alpha, omega, kI * alpha * std::sqrt(-2.0 * alpha * alpha - omega)};
}

ExponentialTriple family_d_triple(double alpha, double omega, int sign) {
  const double r = alpha * std::sqrt(omega + alpha * alpha);
  return {alpha, omega, Complex(sign >= 0 ? r : -r, 0.0)};
}

Complex u_family_d(double alpha, double omega, double x, double t) {
  const double sw = std::sqrt(omega);
  const double sq = std::sqrt(alpha * alpha + omega);
  const double e2 = std::exp(2.0 * x * sw);
  const double den = alpha * alpha * (e2 - 1.0) + 2.0 * sw * (sq + sw) * e2;
  const double phase = std::fmod(omega * t, 2.0 * kPi);
  return 2.0 * alpha * sw * (sq + sw) * std::exp(x * sw) * std::polar(1.0, phase) / den;
}

double singularity_x(double alpha, double omega) {
  const double sw = std::sqrt(omega);
  return -std::log((2.0 * sw * std::sqrt(alpha * alpha + omega) + alpha * alpha + 2.0 * omega) / (alpha * alpha)) /
         (2.0 * sw);
}

Complex u_section5_numerator(double x, double t) {
  auto e = [](Complex z) { return std::exp(z); };
  const Complex it = kI * t;
  return 72.0 * e(2.0 * (x + 8.0 * it)) *
         (Complex(72, 72) * e(6.0 * (x + 2.0 * it)) - Complex(2, 2) * e(2.0 * (x + 6.0 * it)) +
          72.0 * kI * std::exp(8.0 * x) - kI);
}

Complex u_section5_denominator(double x, double t) {
  auto e = [](Complex z) { return std::exp(z); };
  const Complex it = kI * t;
  return -36.0 * std::exp(4.0 * x) *
             (18.0 * e(4.0 * (x + 3.0 * it)) + Complex(8, -8) * e(2.0 * x + 24.0 * it) + 9.0 * e(12.0 * it) +
              Complex(8, 8) * std::exp(2.0 * x)) +
         2592.0 * e(12.0 * (x + it)) + e(12.0 * it);
}

Complex u_section5(double x, double t) {
  const Complex den = u_section5_denominator(x, t);
  const double scale = 36.0 * std::exp(4.0 * x) * (18.0 * std::exp(4.0 * x) + 16.0 * std::exp(2.0 * x) + 9.0) +
                       2592.0 * std::exp(12.0 * x) + 1.0;
  if (std::abs(den) < 1e-12 * scale)
    throw Error(ErrorKind::SingularPoint, "u2 vanishes at x=" + std::to_string(x) + ", t=" + std::to_string(t));
  return u_section5_numerator(x, t) / den;
}

std::vector<double> section5_singular_x(double x_lo, double x_hi, int scan) {
  auto f = [](double x) { return u_section5_denominator(x, 0.0).real(); };
  std::vector<double> roots;
  double xa = x_lo;
  double fa = f(xa);
  for (int i = 1; i <= scan; ++i) {
    const double xb = x_lo + (x_hi - x_lo) * i / scan;
    const double fb = f(xb);
    if ((fa < 0.0) != (fb < 0.0)) {
      double lo = xa, hi = xb, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    xa = xb;
    fa = fb;
  }
  return roots;
}

std::vector<LevelSetPoint> omega_levelsets(const ExponentialTriple& tr, double x0, double x1, double y0, double y1,
                                           int nx, int ny) {
  std::vector<std::vector<Complex>> vals(ny, std::vector<Complex>(nx));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Complex k(x0 + (x1 - x0) * i / (nx - 1), y0 + (y1 - y0) * j / (ny - 1));
      try {
        vals[j][i] = omega_h(tr, k).omega;
      } catch (const Error&) {
        vals[j][i] = Complex(std::nan(""), std::nan(""));
      }
    }
  }
  std::vector<LevelSetPoint> out;
  auto probe = [&](int i0, int j0, int i1, int j1) {
    const Complex a = vals[j0][i0];
    const Complex b = vals[j1][i1];
    if (std::isnan(a.real()) || std::isnan(b.real())) return;
    const Complex mid(x0 + (x1 - x0) * (i0 + i1) / 2.0 / (nx - 1), y0 + (y1 - y0) * (j0 + j1) / 2.0 / (ny - 1));
    if ((a.real() < 0.0) != (b.real() < 0.0)) out.push_back({mid, true});
    if ((a.imag() < 0.0) != (b.imag() < 0.0)) out.push_back({mid, false});
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (i + 1 < nx) probe(i, j, i + 1, j);
      if (j + 1 < ny) probe(i, j, i, j + 1);
    }
  }
  return out;
}

}  // namespace hnls
