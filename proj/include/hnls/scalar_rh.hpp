#pragma once

#include <functional>
#include <vector>

#include "hnls/dressing.hpp"
#include "hnls/types.hpp"

namespace hnls {

struct CauchyOptions {
  double scale = -1.0;      // characteristic width of f; default 1 (sqrt(omega) in ScalarFunctions)
  double delta = -1.0;      // minimum |Im k|; default 1e-3 scale
  double inner = -1.0;      // half-width of the uniformly resolved core; default 8 scale
  double outer_ratio = 1e5; // truncation L = outer_ratio * inner
  int nodes = 32;           // Gauss nodes per panel
};

/// (1/2 pi i) int_R f(s)/(s - k) ds for f decaying like 1/s^2.
///
/// Composite Gauss-Legendre on panels graded towards Re k, with f(Re k)
/// subtracted and integrated exactly, geometric panels out to L, and the
/// remaining |s| > L fitted as r2/s^2 + r3/s^3 and integrated analytically.
Complex cauchy_transform(const std::function<Complex(double)>& f, Complex k, const CauchyOptions& opts = {});

/// P^b as a finite sum of simple poles, sum_i r_i / (k - p_i).
struct PbModel {
  std::vector<Complex> poles;
  std::vector<Complex> residues;

  Complex eval(Complex k) const;
  /// Sum of residues; equals -conj(g0(0)) / (2i) for data with P^b ~ -conj(g0(0))/(2ik).
  Complex residue_sum() const;
};

/// log(1 - |Q^b(s)|^2) = -log A^2(s) with A^2 = (1 + sqrt(1 + 4|P^b|^2)) / 2 on the real line.
double log_one_minus_q2(Complex pb_real);

/// a(k), b(k), h(k) built from the boundary spectral data.
class ScalarFunctions {
 public:
  /// f(s) = log(1 - |Q^b(s)|^2) and the evaluators of P^b and Q^b.
  ScalarFunctions(std::function<double(double)> f, std::function<Complex(Complex)> pb,
                  std::function<Complex(double)> qb_real, double omega, CauchyOptions opts = {});
  /// All three from a rational P^b model; on the real line Q^b = conj(P^b) / A^2.
  static ScalarFunctions from_model(const PbModel& model, double omega, CauchyOptions opts = {});

  /// exp(-C[f](k)) for |Im k| >= delta (Im k > 0 is the physical sheet).
  Complex a(Complex k) const;
  /// Boundary value a(s + i0) from the sequence Im k = delta 2^{-m} with Richardson extrapolation.
  Complex a_boundary(double s) const;
  Complex b_boundary(double s) const;
  /// -P^b(k) / a(k)^2 for Im k >= delta.
  Complex h(Complex k) const;
  /// -conj(b(s)) / a(s) on the real line.
  Complex h_boundary(double s) const;
  double delta() const { return opts_.delta; }
  const CauchyOptions& options() const { return opts_; }

 private:
  std::function<double(double)> f_;
  std::function<Complex(Complex)> pb_;
  std::function<Complex(double)> qb_;
  double omega_;
  CauchyOptions opts_;
};

/// h_j = -(Res_{k_j} P^b) / a(k_j)^2 for the upper poles of the model.
PoleData h_residues(const ScalarFunctions& sf, const PbModel& model, double omega);

}  // namespace hnls
