#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hnls/boundary.hpp"
#include "hnls/types.hpp"

namespace hnls {

using Field = std::function<Complex(double x, double t)>;

struct Grid {
  double x0 = 0.0, x1 = 1.0;
  int nx = 2;
  double t0 = 0.0, t1 = 1.0;
  int nt = 2;

  double x(int i) const { return nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1); }
  double t(int j) const { return nt == 1 ? t0 : t0 + (t1 - t0) * j / (nt - 1); }
};

/// max over the grid of |i D_t u + D_xx u - 2|u|^2 u| with central differences.
/// Stencils reach x - h_x and t - h_t, so u must be defined there.
double nls_residual(const Field& u, const Grid& grid, double hx, double ht);

/// Residuals at h and h/2 and the observed order log2(r(h) / r(h/2)).
struct ResidualConvergence {
  double r_h = 0.0;
  double r_half = 0.0;
  double order = 0.0;
};
ResidualConvergence residual_convergence(const Field& u, const Grid& grid, double h);

/// (max |u(0,t) - g0(t)|, max |u_x(0,t) - g1(t)|), u_x by the 5-point one-sided formula.
std::pair<double, double> boundary_check(const Field& u, const PeriodicPair& pair, const std::vector<double>& t_grid,
                                         double hx);
Complex dx_one_sided(const Field& u, double x, double t, double h);

double periodicity_check(const Field& u, double tau, const Grid& grid);
std::vector<std::pair<double, double>> decay_check(const Field& u, const std::vector<double>& x_grid,
                                                   const std::vector<double>& t_samples);
/// L1 norm in x at each t; integration stops where |u| < 1e-14 (or at x_cap).
std::vector<std::pair<double, double>> l1_growth(const Field& u, const std::vector<double>& t_samples,
                                                 double x_cap = 200.0);

struct VerifyTolerances {
  double pde_residual = 1e-5;
  double boundary_g0 = 1e-10;
  double boundary_g1 = 1e-6;
  double periodicity = 1e-10;
  double h = 1e-3;
};

struct VerificationReport {
  double max_pde_residual = 0.0;
  double residual_order = 0.0;
  double boundary_err_g0 = 0.0;
  double boundary_err_g1 = 0.0;
  double periodicity_err = 0.0;
  std::vector<std::pair<double, double>> decay_profile;
  std::vector<std::pair<double, double>> l1_growth;
  bool boundary_checked = false;
  bool pass = false;
};

/// Runs every check on a black-box evaluator. The PDE residual grid is taken
/// from `grid` with x shifted to at least h so stencils stay in x >= 0.
VerificationReport verify_solution(const Field& u, double tau, const Grid& grid,
                                   const std::optional<PeriodicPair>& pair = std::nullopt,
                                   const VerifyTolerances& tol = {});

void to_json(nlohmann::json& j, const VerificationReport& r);

}  // namespace hnls
