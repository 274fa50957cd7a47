#include "hnls/verify.hpp"

#include <algorithm>
#include <cmath>

#include "hnls/quadrature.hpp"

namespace hnls {

double nls_residual(const Field& u, const Grid& grid, double hx, double ht) {
  double worst = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x(i);
    for (int j = 0; j < grid.nt; ++j) {
      const double t = grid.t(j);
      const Complex c = u(x, t);
      const Complex ut = (u(x, t + ht) - u(x, t - ht)) / (2.0 * ht);
      const Complex uxx = (u(x + hx, t) - 2.0 * c + u(x - hx, t)) / (hx * hx);
      worst = std::max(worst, std::abs(kI * ut + uxx - 2.0 * std::norm(c) * c));
    }
  }
  return worst;
}

ResidualConvergence residual_convergence(const Field& u, const Grid& grid, double h) {
  ResidualConvergence r;
  r.r_h = nls_residual(u, grid, h, h);
  r.r_half = nls_residual(u, grid, h / 2.0, h / 2.0);
  r.order = r.r_half > 0.0 ? std::log2(r.r_h / r.r_half) : 0.0;
  return r;
}

Complex dx_one_sided(const Field& u, double x, double t, double h) {
  return (-25.0 * u(x, t) + 48.0 * u(x + h, t) - 36.0 * u(x + 2.0 * h, t) + 16.0 * u(x + 3.0 * h, t) -
          3.0 * u(x + 4.0 * h, t)) /
         (12.0 * h);
}

std::pair<double, double> boundary_check(const Field& u, const PeriodicPair& pair, const std::vector<double>& t_grid,
                                         double hx) {
  double e0 = 0.0, e1 = 0.0;
  for (const double t : t_grid) {
    const BoundaryValues b = pair.eval(t);
    e0 = std::max(e0, std::abs(u(0.0, t) - b.g0));
    e1 = std::max(e1, std::abs(dx_one_sided(u, 0.0, t, hx) - b.g1));
  }
  return {e0, e1};
}

double periodicity_check(const Field& u, double tau, const Grid& grid) {
  double worst = 0.0;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.nt; ++j) {
      const double x = grid.x(i), t = grid.t(j);
      worst = std::max(worst, std::abs(u(x, t + tau) - u(x, t)));
    }
  return worst;
}

std::vector<std::pair<double, double>> decay_check(const Field& u, const std::vector<double>& x_grid,
                                                   const std::vector<double>& t_samples) {
  std::vector<std::pair<double, double>> out;
  for (const double x : x_grid) {
    double s = 0.0;
    for (const double t : t_samples) s = std::max(s, std::abs(u(x, t)));
    out.emplace_back(x, s);
  }
  return out;
}

std::vector<std::pair<double, double>> l1_growth(const Field& u, const std::vector<double>& t_samples, double x_cap) {
  const GaussRule& rule = gauss_legendre(16);
  const double panel = 0.25;
  std::vector<std::pair<double, double>> out;
  for (const double t : t_samples) {
    double sum = 0.0;
    for (double a = 0.0; a < x_cap; a += panel) {
      double part = 0.0, peak = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double v = std::abs(u(a + 0.5 * panel * (1.0 + rule.nodes[q]), t));
        part += rule.weights[q] * v;
        peak = std::max(peak, v);
      }
      sum += 0.5 * panel * part;
      if (peak < 1e-14) break;
    }
    out.emplace_back(t, sum);
  }
  return out;
}

VerificationReport verify_solution(const Field& u, double tau, const Grid& grid,
                                   const std::optional<PeriodicPair>& pair, const VerifyTolerances& tol) {
  VerificationReport rep;
  Grid g = grid;
  g.x0 = std::max(g.x0, tol.h);
  g.x1 = std::max(g.x1, g.x0);
  const ResidualConvergence rc = residual_convergence(u, g, tol.h);
  rep.max_pde_residual = rc.r_h;
  rep.residual_order = rc.order;

  std::vector<double> ts;
  for (int j = 0; j < grid.nt; ++j) ts.push_back(grid.t(j));
  if (pair) {
    const auto [e0, e1] = boundary_check(u, *pair, ts, tol.h);
    rep.boundary_err_g0 = e0;
    rep.boundary_err_g1 = e1;
    rep.boundary_checked = true;
  }
  rep.periodicity_err = periodicity_check(u, tau, grid);

  std::vector<double> xs;
  for (int i = 0; i < grid.nx; ++i) xs.push_back(grid.x(i));
  rep.decay_profile = decay_check(u, xs, ts);
  std::vector<double> tl;
  for (int j = 0; j < 5; ++j) tl.push_back(grid.t0 + j * tau / 4.0);
  rep.l1_growth = l1_growth(u, tl);

  const double l1_spread = std::abs(rep.l1_growth.back().second - rep.l1_growth.front().second);
  const double l1_scale = std::max(1e-300, rep.l1_growth.front().second);

  rep.pass = rep.max_pde_residual <= tol.pde_residual && rep.periodicity_err <= tol.periodicity &&
             l1_spread <= 1e-6 * l1_scale + 1e-14 &&
             (!rep.boundary_checked || (rep.boundary_err_g0 <= tol.boundary_g0 && rep.boundary_err_g1 <= tol.boundary_g1));
  return rep;
}

}  // namespace hnls

namespace hnls {

void to_json(nlohmann::json& j, const VerificationReport& r) {
  auto pairs = [](const std::vector<std::pair<double, double>>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [x, y] : v) a.push_back({x, y});
    return a;
  };
  j = {{"pass", r.pass},
       {"max_pde_residual", r.max_pde_residual},
       {"residual_order", r.residual_order},
       {"periodicity_err", r.periodicity_err},
       {"decay_profile", pairs(r.decay_profile)},
       {"l1_growth", pairs(r.l1_growth)}};
  if (r.boundary_checked) {
    j["boundary_err_g0"] = r.boundary_err_g0;
    j["boundary_err_g1"] = r.boundary_err_g1;
  }
}

}  // namespace hnls
