#include "hnls/scalar_rh.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hnls/error.hpp"
#include "hnls/quadrature.hpp"

namespace hnls {

namespace {

// int_{|s|>L} ds / (s^p (s - k)) for p = 2, 3 and |k| << L, by the atanh series.
Complex tail_integral(Complex k, double L, int p) {
  const Complex z = k / L;
  Complex sum = 0.0;
  Complex zp = 1.0;  // z^{2m-2}
  for (int m = 1; m < 60; ++m) {
    const Complex term = zp / static_cast<double>(2 * m + 1);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    zp *= z * z;
  }
  // p = 2: 2k/L^3 * sum_{m>=1} z^{2m-2}/(2m+1); p = 3: 2/L^3 * same.
  return p == 2 ? 2.0 * k / (L * L * L) * sum : 2.0 / (L * L * L) * sum;
}

std::vector<double> breakpoints(double a, double y, double inner, double L, double width) {
  std::vector<double> pts;
  const int nu = std::max(2, static_cast<int>(std::ceil(2.0 * inner / width)));
  for (int i = 0; i <= nu; ++i) pts.push_back(-inner + 2.0 * inner * i / nu);
  if (std::abs(a) < inner) {
    pts.push_back(a);
    for (double d = std::abs(y); d < width; d *= 2.0) {
      if (a - d > -inner) pts.push_back(a - d);
      if (a + d < inner) pts.push_back(a + d);
    }
  }
  for (double s = 2.0 * inner; s <= L * (1.0 + 1e-12); s *= 2.0) {
    pts.push_back(s);
    pts.push_back(-s);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [](double u, double v) { return std::abs(u - v) < 1e-15 * (1.0 + std::abs(u)); }),
            pts.end());
  return pts;
}

}  // namespace

Complex cauchy_transform(const std::function<Complex(double)>& f, Complex k, const CauchyOptions& in) {
  const double scale = in.scale > 0.0 ? in.scale : 1.0;
  const double delta = in.delta > 0.0 ? in.delta : 1e-3 * scale;
  const double a = k.real();
  const double y = k.imag();
  if (std::abs(y) < delta)
    throw Error(ErrorKind::TooCloseToContour, "Cauchy transform evaluated within delta of the real line");
  double inner = in.inner > 0.0 ? in.inner : 8.0 * scale;
  inner = std::max(inner, std::abs(a) + 2.0 * scale);
  const int levels = static_cast<int>(std::ceil(std::log2(in.outer_ratio)));
  const double L = inner * std::pow(2.0, levels);
  const auto pts = breakpoints(a, y, inner, L, 0.5 * scale);

  const Complex fa = f(a);
  const GaussRule& rule = gauss_legendre(in.nodes);
  Complex sum = 0.0;
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    const double lo = pts[p], hi = pts[p + 1];
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    Complex part = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = mid + half * rule.nodes[q];
      part += rule.weights[q] * (f(s) - fa) / (s - k);
    }
    sum += half * part;
  }
  const double Lend = pts.back();
  sum += fa * (std::log(Lend - k) - std::log(-Lend - k));
  const Complex fp = f(Lend), fm = f(-Lend);
  const Complex r2 = 0.5 * (fp + fm) * Lend * Lend;
  const Complex r3 = 0.5 * (fp - fm) * Lend * Lend * Lend;
  sum += r2 * tail_integral(k, Lend, 2) + r3 * tail_integral(k, Lend, 3);
  return sum / (2.0 * kPi * kI);
}

Complex PbModel::eval(Complex k) const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < poles.size(); ++i) s += residues[i] / (k - poles[i]);
  return s;
}

Complex PbModel::residue_sum() const {
  Complex s = 0.0;
  for (const Complex r : residues) s += r;
  return s;
}

double log_one_minus_q2(Complex pb_real) {
  const double x = std::norm(pb_real);
  return -std::log1p(2.0 * x / (1.0 + std::sqrt(1.0 + 4.0 * x)));
}

ScalarFunctions::ScalarFunctions(std::function<double(double)> f, std::function<Complex(Complex)> pb,
                                 std::function<Complex(double)> qb_real, double omega, CauchyOptions opts)
    : f_(std::move(f)), pb_(std::move(pb)), qb_(std::move(qb_real)), omega_(omega), opts_(opts) {
  if (opts_.scale <= 0.0) opts_.scale = std::sqrt(omega_);
  if (opts_.delta <= 0.0) opts_.delta = 1e-3 * std::sqrt(omega_);
}

ScalarFunctions ScalarFunctions::from_model(const PbModel& model, double omega, CauchyOptions opts) {
  auto f = [model](double s) { return log_one_minus_q2(model.eval(s)); };
  auto pb = [model](Complex k) { return model.eval(k); };
  auto qb = [model](double s) {
    const Complex p = model.eval(s);
    const double a2 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * std::norm(p)));
    return std::conj(p) / a2;
  };
  return ScalarFunctions(f, pb, qb, omega, opts);
}

Complex ScalarFunctions::a(Complex k) const {
  const auto fc = [this](double s) { return Complex(f_(s), 0.0); };
  return std::exp(-cauchy_transform(fc, k, opts_));
}

Complex ScalarFunctions::a_boundary(double s) const {
  // Neville extrapolation to eps = 0 from eps = delta 2^{-m}, m = 0..3.
  constexpr int m = 4;
  std::array<Complex, m> val;
  std::array<double, m> eps;
  CauchyOptions o = opts_;
  for (int i = 0; i < m; ++i) {
    eps[i] = opts_.delta * std::pow(0.5, i);
    o.delta = eps[i];
    const auto fc = [this](double x) { return Complex(f_(x), 0.0); };
    val[i] = std::exp(-cauchy_transform(fc, Complex(s, eps[i]), o));
  }
  for (int j = 1; j < m; ++j)
    for (int i = m - 1; i >= j; --i) val[i] = (eps[i - j] * val[i] - eps[i] * val[i - 1]) / (eps[i - j] - eps[i]);
  return val[m - 1];
}

Complex ScalarFunctions::b_boundary(double s) const { return qb_(s) * a_boundary(s); }

Complex ScalarFunctions::h(Complex k) const {
  const Complex av = a(k);
  return -pb_(k) / (av * av);
}

Complex ScalarFunctions::h_boundary(double s) const {
  const Complex av = a_boundary(s);
  return -std::conj(qb_(s) * av) / av;
}

PoleData h_residues(const ScalarFunctions& sf, const PbModel& model, double omega) {
  PoleData pd;
  pd.omega = omega;
  for (std::size_t i = 0; i < model.poles.size(); ++i) {
    if (model.poles[i].imag() <= 0.0) continue;
    const Complex av = sf.a(model.poles[i]);
    if (std::abs(av) < 1e-10) throw Error(ErrorKind::PoleOfA, "a(k) vanishes at a pole of P^b");
    pd.poles.push_back(model.poles[i]);
    pd.residues.push_back(-model.residues[i] / (av * av));
  }
  return pd;
}

}  // namespace hnls
