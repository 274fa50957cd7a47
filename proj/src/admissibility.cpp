#include "hnls/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hnls/error.hpp"
#include "hnls/lattice.hpp"
#include "hnls/monodromy.hpp"
#include "hnls/parallel.hpp"
#include "hnls/quadrature.hpp"
#include "hnls/spectral.hpp"

namespace hnls {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Admissible: return "admissible";
    case Verdict::Rejected: return "rejected";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::OddZeroOfG: return "odd_zero_of_G";
    case RejectReason::PoleOfQbUpper: return "pole_of_Qb_upper_half_plane";
    case RejectReason::Decay: return "decay";
    case RejectReason::SupQbNotBelowOne: return "sup_Qb_not_below_one";
    case RejectReason::RealAxisPole: return "real_axis_pole";
    case RejectReason::TooManyPoles: return "too_many_poles";
    case RejectReason::ModelMismatch: return "model_mismatch";
  }
  return "?";
}

namespace {

double data_scale(const PeriodicPair& pair) {
  return std::max({1.0, std::sqrt(pair.omega()), pair.g0_bound(), std::sqrt(pair.g1_bound())});
}

// |sqrt(n+1) - sqrt(n)| sqrt(omega)/2: distance from the n-th lattice point to the next one out.
double lattice_gap(int n, double omega) {
  return (std::sqrt(n + 1.0) - std::sqrt(static_cast<double>(n))) * std::sqrt(omega) / 2.0;
}

// sqrt G in the scaling of z.z.
Complex scaled_sqrt_g(const Monodromy& z, double tau) {
  const Complex phase = 2.0 * z.k * z.k * tau;
  return 2.0 * kI * scaled_sin(phase) * std::exp(std::abs(phase.imag()) - z.log_scale);
}

Complex pb_value(const PeriodicPair& pair, Complex k, double tol) {
  const Monodromy z = monodromy(pair, k, tol);
  return -z.z(1, 0) / scaled_sqrt_g(z, pair.tau());
}

// G / (-4 sin^2(2k^2 tau)), identically 1 for admissible pairs.
Complex r_ratio(const Monodromy& z, double tau) {
  const Complex phase = 2.0 * z.k * z.k * tau;
  const double im = std::abs(phase.imag());
  const Complex tr = z.z.trace();
  const Complex ss = scaled_sin(phase);
  return (tr * tr * std::exp(2.0 * (z.log_scale - im)) - 4.0 * std::exp(-2.0 * im)) / (-4.0 * ss * ss);
}

Complex qb_from(const Monodromy& z, double tau) {
  return -2.0 * z.z(0, 1) / (z.z(0, 0) - z.z(1, 1) - scaled_sqrt_g(z, tau));
}

}  // namespace

namespace {

// Golden-section search for the maximum of |q| on [lo, hi]; raises r.sup in place.
void refine_max(const std::function<Complex(double)>& q, double lo, double hi, A3Result& r) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = std::abs(q(x1)), f2 = std::abs(q(x2));
  for (int it = 0; it < 40 && hi - lo > 1e-10 * (1.0 + std::abs(lo)); ++it) {
    if (f1 > f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = std::abs(q(x1));
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = std::abs(q(x2));
    }
  }
  if (f1 > r.sup) r.sup = f1, r.argmax = x1;
  if (f2 > r.sup) r.sup = f2, r.argmax = x2;
}

// Grid denser near the origin, where |Q^b| peaks for decaying data.
double grid_point(double L, int i, int points) {
  const double a = 2.0;
  const double s = -1.0 + 2.0 * i / (points - 1);
  return L * std::sinh(a * s) / std::sinh(a);
}

}  // namespace

A3Result check_a3(const std::function<Complex(double)>& qb_fn, double L, int points, double margin) {
  if (points < 3 || !(L > 0.0)) throw Error(ErrorKind::InvalidArgument, "check_a3: need L > 0 and points >= 3");
  A3Result r;
  int im = 0;
  for (int i = 0; i < points; ++i) {
    const double x = grid_point(L, i, points);
    const double v = std::abs(qb_fn(x));
    if (i == 0 || v > r.sup) r.sup = v, r.argmax = x, im = i;
  }
  refine_max(qb_fn, grid_point(L, std::max(0, im - 1), points), grid_point(L, std::min(points - 1, im + 1), points),
             r);
  r.pass = r.sup < 1.0 - margin;
  return r;
}

A3Result check_a3(const PeriodicPair& pair, const A3Options& opts) {
  const double L = opts.L > 0.0 ? opts.L : 2.0 * data_scale(pair);
  const double omega = pair.omega();
  SpectralOptions so;
  so.monodromy.tol = opts.tol;
  auto q = [&](double x) -> Complex {
    if (near_singular(x, omega, so.guard)) return spectral_limit(pair, x, -1.0, 32, so).qb;
    const SpectralSample s = spectral_sample(pair, x, so);
    return std::isnan(s.qb.real()) ? spectral_limit(pair, x, -1.0, 32, so).qb : s.qb;
  };
  const int points = std::max(3, opts.points);
  std::vector<double> vals(points);
  parallel_for(points, opts.threads, [&](std::size_t i) { vals[i] = std::abs(q(grid_point(L, i, points))); });
  const int im = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  A3Result r;
  r.sup = vals[im];
  r.argmax = grid_point(L, im, points);
  refine_max(q, grid_point(L, std::max(0, im - 1), points), grid_point(L, std::min(points - 1, im + 1), points), r);
  r.guard_collision = near_singular(r.argmax, omega, so.guard);
  r.pass = r.sup < 1.0 - opts.margin;
  return r;
}

Complex pb_contour_residue(const PeriodicPair& pair, Complex center, double radius, int nodes, double tol,
                           int power) {
  // (1/2 pi i) oint P (k - c)^power dk with k - c = r e^{i theta}: mean of P (k - c)^{power + 1}.
  Complex sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const Complex e = radius * std::polar(1.0, 2.0 * kPi * (j + 0.5) / nodes);
    sum += pb_value(pair, center + e, tol) * std::pow(e, power + 1);
  }
  return sum / static_cast<double>(nodes);
}

std::vector<PoleCandidate> locate_poles(const PeriodicPair& pair, int n_max, double radius_factor,
                                        const PoleOptions& opts, int n_min) {
  if (n_max < 1 || n_min < 1) throw Error(ErrorKind::InvalidArgument, "locate_poles: n_max must be >= 1");
  if (!(radius_factor > 0.0)) throw Error(ErrorKind::InvalidArgument, "locate_poles: radius factor must be positive");
  const double omega = pair.omega();
  // The outward neighbour is the nearest one; its guard disc must stay outside the circle.
  const double guard = 1e-3 * std::sqrt(omega);
  for (int n = n_min - 1; n <= n_max; ++n) {
    const double gap = lattice_gap(std::max(n, 0), omega);
    if (radius_factor * gap >= gap - guard)
      throw Error(ErrorKind::ContourCrossesSingularity,
                  "locate_poles: contour around lattice point " + std::to_string(n) + " reaches a neighbour's guard");
  }
  std::vector<PoleCandidate> out;
  for (int n = n_min; n <= n_max; ++n) {
    const double y = std::sqrt(n * omega) / 2.0;
    const double r = radius_factor * lattice_gap(n, omega);
    out.push_back({Complex(0.0, y), n, LatticeSide::Upper, {}, {}, r, false});
    if (opts.lower) out.push_back({Complex(0.0, -y), n, LatticeSide::Lower, {}, {}, r, false});
  }
  if (opts.real) {
    if (n_min == 1) out.push_back({Complex(0.0, 0.0), 0, LatticeSide::Real, {}, {}, radius_factor * lattice_gap(0, omega), false});
    for (int n = n_min; n <= n_max; ++n) {
      const double x = std::sqrt(n * omega) / 2.0;
      const double r = radius_factor * lattice_gap(n, omega);
      out.push_back({Complex(x, 0.0), n, LatticeSide::Real, {}, {}, r, false});
      out.push_back({Complex(-x, 0.0), n, LatticeSide::Real, {}, {}, r, false});
    }
  }
  const double thr = opts.residue_tol * std::max(1.0, pair.g0_bound()) * std::sqrt(omega);
  parallel_for(out.size(), opts.threads, [&](std::size_t i) {
    PoleCandidate& c = out[i];
    c.residue = pb_contour_residue(pair, c.k, c.radius, opts.scan_nodes, opts.scan_tol);
    if (c.side == LatticeSide::Real)
      c.second = pb_contour_residue(pair, c.k, c.radius, opts.scan_nodes, opts.scan_tol, 1);
    if (std::abs(c.residue) > thr || std::abs(c.second) > thr * c.radius) {
      c.residue = pb_contour_residue(pair, c.k, c.radius, opts.refine_nodes, opts.refine_tol);
      if (c.side == LatticeSide::Real)
        c.second = pb_contour_residue(pair, c.k, c.radius, opts.refine_nodes, opts.refine_tol, 1);
      c.nonzero = std::abs(c.residue) > thr || std::abs(c.second) > thr * c.radius;
    }
  });
  return out;
}

FinitePolesResult check_finite_poles(const std::vector<PoleCandidate>& scan, int n_scanned) {
  FinitePolesResult r;
  for (const auto& c : scan)
    if (c.nonzero && c.side != LatticeSide::Real) r.n0 = std::max(r.n0, c.n);
  // Poles reaching into the upper half of the scan window are not resolved by it.
  r.pass = r.n0 <= n_scanned / 2;
  r.inconclusive = !r.pass;
  return r;
}

DecayResult check_decay(const PeriodicPair& pair, const DecayOptions& opts) {
  const double r0 = opts.r0 > 0.0 ? opts.r0 : 1.5 * data_scale(pair);
  const Complex dir = std::polar(1.0, opts.angle);
  Complex f[3], p[3], k[3];
  for (int i = 0; i < 3; ++i) {
    k[i] = r0 * std::ldexp(1.0, i) * dir;
    p[i] = pb_value(pair, k[i], opts.tol);
    f[i] = k[i] * p[i];
  }
  DecayResult r;
  const Complex f1 = 2.0 * f[1] - f[0], f2 = 2.0 * f[2] - f[1];
  r.coefficient = (4.0 * f2 - f1) / 3.0;
  r.expected = -std::conj(pair.eval(0.0).g0) / (2.0 * kI);
  const double rem0 = std::abs(p[1] - r.coefficient / k[1]);
  const double rem1 = std::abs(p[2] - r.coefficient / k[2]);
  r.remainder_ratio = rem1 > 0.0 ? rem0 / rem1 : std::numeric_limits<double>::infinity();
  const double scale = std::max(std::abs(r.expected), 0.01 * std::max(1.0, pair.g0_bound()));
  const bool coeff_ok = std::abs(r.coefficient - r.expected) <= 0.01 * scale;
  const bool tiny = rem0 <= 1e-6 * std::abs(p[1]) + 1e-12;
  const bool ratio_ok = tiny || (r.remainder_ratio > 2.0 && r.remainder_ratio < 8.0);
  r.pass = coeff_ok && ratio_ok;
  return r;
}

namespace {

struct Cell {
  Complex corners[4];  // counter-clockwise
};

std::vector<double> snapped_edges(double lo, double hi, int count, double omega, bool symmetric) {
  // Targets spread uniformly, each moved to the nearest midpoint between lattice points on its axis.
  std::vector<double> e;
  for (int i = 0; i <= count; ++i) {
    const double t = lo + (hi - lo) * i / count;
    const double a = std::abs(t);
    const int n = static_cast<int>(std::floor(4.0 * a * a / omega));
    const double mid = (std::sqrt(static_cast<double>(n)) + std::sqrt(n + 1.0)) * std::sqrt(omega) / 4.0;
    e.push_back(symmetric && t < 0.0 ? -mid : mid);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), e.end());
  return e;
}

}  // namespace

SmoothnessResult check_smoothness(const PeriodicPair& pair, const SmoothnessOptions& opts) {
  const double omega = pair.omega();
  const double tau = pair.tau();
  const double W = opts.half_width > 0.0
                       ? opts.half_width
                       : 1.5 * std::max({std::sqrt(omega) / 2.0, pair.g0_bound(), std::sqrt(pair.g1_bound()), 0.5});
  const double H = opts.height > 0.0 ? opts.height : W;
  SmoothnessResult res;

  auto mono = [&](Complex k) { return monodromy(pair, k, opts.tol); };

  // Real axis: G = (tr Z)^2 - 4 is real there and equals -4 sin^2 <= 0 for admissible pairs.
  // A positive value means a band where |tr Z| > 2, bounded by odd zeros.
  {
    const int m = std::max(3, opts.real_samples);
    std::vector<double> gval(m);
    parallel_for(m, opts.threads, [&](std::size_t i) {
      const Complex tr = mono(-W + 2.0 * W * static_cast<double>(i) / (m - 1)).z.trace();
      gval[i] = (tr * tr).real() - 4.0;
    });
    for (int i = 0; i < m; ++i) {
      if (gval[i] > 1e3 * opts.tol) {
        res.odd_zero_cells.push_back(-W + 2.0 * W * i / (m - 1));
        break;
      }
    }
  }

  // Upper half plane: cells whose edges stay a quarter gap away from the lattice.
  const std::vector<double> xe = snapped_edges(-W, W, opts.columns, omega, true);
  const int rows = std::max(2, opts.rows);
  const std::vector<double> ye = snapped_edges(H / rows, H, rows - 1, omega, false);
  std::vector<Cell> cells;
  for (std::size_t c = 0; c + 1 < xe.size(); ++c) {
    // Quarter gap of the innermost real lattice point under this column.
    const double a = (xe[c] < 0.0 && xe[c + 1] > 0.0) ? 0.0 : std::min(std::abs(xe[c]), std::abs(xe[c + 1]));
    const int n = static_cast<int>(std::floor(4.0 * a * a / omega + 0.5));
    double lo = std::min(0.25 * lattice_gap(n, omega), 0.5 * ye.front());
    for (const double hi : ye) {
      cells.push_back({{Complex(xe[c], lo), Complex(xe[c + 1], lo), Complex(xe[c + 1], hi), Complex(xe[c], hi)}});
      lo = hi;
    }
  }

  const GaussRule& gr = gauss_legendre(opts.edge_nodes);
  std::vector<int> winding(cells.size(), 0);
  std::vector<Complex> qint(cells.size());
  std::vector<double> dev(cells.size(), 0.0);
  parallel_for(cells.size(), opts.threads, [&](std::size_t ci) {
    const Cell& cell = cells[ci];
    double total_arg = 0.0;
    Complex qsum = 0.0;
    double maxdev = 0.0;
    for (int e = 0; e < 4; ++e) {
      const Complex a = cell.corners[e], b = cell.corners[(e + 1) % 4];
      const Complex half = 0.5 * (b - a);
      auto rv = [&](double s) {
        const Complex r = r_ratio(mono(a + s * (b - a)), tau);
        maxdev = std::max(maxdev, std::abs(r - 1.0));
        return r;
      };
      // Gauss nodes serve both the Q^b quadrature and as the coarse samples for arg R.
      std::vector<std::pair<double, Complex>> coarse{{0.0, rv(0.0)}};
      for (std::size_t i = 0; i < gr.nodes.size(); ++i) {
        const Monodromy z = mono(0.5 * (a + b) + half * gr.nodes[i]);
        qsum += gr.weights[i] * half * qb_from(z, tau);
        const Complex r = r_ratio(z, tau);
        maxdev = std::max(maxdev, std::abs(r - 1.0));
        coarse.push_back({0.5 * (1.0 + gr.nodes[i]), r});
      }
      coarse.push_back({1.0, rv(1.0)});
      for (std::size_t i = 1; i < coarse.size(); ++i) {
        double s0 = coarse[i - 1].first;
        Complex v0 = coarse[i - 1].second;
        std::vector<std::pair<double, Complex>> todo{coarse[i]};
        int budget = 4096;
        while (!todo.empty()) {
          const auto [s, v] = todo.back();
          const double d = std::arg(v / v0);
          if (std::abs(d) > 0.5 && s - s0 > 1e-6 && budget-- > 0) {
            const double sm = 0.5 * (s0 + s);
            todo.push_back({sm, rv(sm)});
            continue;
          }
          total_arg += d;
          s0 = s;
          v0 = v;
          todo.pop_back();
        }
      }
    }
    winding[ci] = static_cast<int>(std::lround(total_arg / (2.0 * kPi)));
    qint[ci] = qsum / (2.0 * kPi * kI);
    dev[ci] = maxdev;
  });

  const double qthr = opts.qb_residue_tol * std::max(1.0, pair.g0_bound());
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Complex centre = 0.25 * (cells[ci].corners[0] + cells[ci].corners[1] + cells[ci].corners[2] +
                                   cells[ci].corners[3]);
    if (winding[ci] % 2 != 0) res.odd_zero_cells.push_back(centre);
    if (!res.qb_pole && std::abs(qint[ci]) > qthr) {
      res.qb_pole = true;
      res.qb_pole_cell = centre;
    }
    res.max_r_deviation = std::max(res.max_r_deviation, dev[ci]);
  }
  res.pass = res.odd_zero_cells.empty() && !res.qb_pole;
  return res;
}

AdmissibilityReport verdict(const PeriodicPair& pair, const AdmissibilityOptions& opts) {
  AdmissibilityReport rep;
  auto reject = [&](RejectReason r) {
    if (rep.reason == RejectReason::None) rep.reason = r;
    rep.verdict = Verdict::Rejected;
  };

  SmoothnessOptions so = opts.smoothness;
  so.threads = opts.threads;
  rep.gates_run.push_back("smoothness");
  rep.smoothness = check_smoothness(pair, so);
  rep.smoothness_pass = rep.smoothness.pass;
  if (!rep.smoothness_pass) {
    reject(rep.smoothness.odd_zero_cells.empty() ? RejectReason::PoleOfQbUpper : RejectReason::OddZeroOfG);
    if (opts.early_exit) return rep;
  }

  rep.gates_run.push_back("decay");
  const DecayResult d = check_decay(pair, opts.decay);
  rep.decay_pass = d.pass;
  rep.decay_coefficient = d.coefficient;
  if (!d.pass) {
    reject(RejectReason::Decay);
    if (opts.early_exit) return rep;
  }

  A3Options ao = opts.a3;
  ao.threads = opts.threads;
  rep.gates_run.push_back("a3");
  const A3Result a3 = check_a3(pair, ao);
  rep.sup_qb_on_r = a3.sup;
  rep.a3_pass = a3.pass;
  rep.a3_guard_collision = a3.guard_collision;
  if (!a3.pass) {
    reject(RejectReason::SupQbNotBelowOne);
    if (opts.early_exit) return rep;
  }

  PoleOptions po = opts.poles;
  po.threads = opts.threads;
  rep.gates_run.push_back("poles");
  std::vector<PoleCandidate> scan;
  int scanned = 0;
  int target = opts.adaptive_scan ? std::min(opts.n_max, std::max(1, opts.min_scan)) : opts.n_max;
  while (scanned < target) {
    const auto part = locate_poles(pair, target, opts.radius_factor, po, scanned + 1);
    scan.insert(scan.end(), part.begin(), part.end());
    scanned = target;
    int n0 = 0;
    for (const auto& c : scan)
      if (c.nonzero && c.side != LatticeSide::Real) n0 = std::max(n0, c.n);
    target = std::min(opts.n_max, std::max(target, 2 * n0));
  }
  bool real_pole = false;
  for (const auto& c : scan) {
    if (!c.nonzero) continue;
    rep.pole_candidates.push_back(c);
    if (c.side == LatticeSide::Real) real_pole = true;
  }
  if (real_pole) {
    reject(RejectReason::RealAxisPole);
    if (opts.early_exit) return rep;
  }
  const FinitePolesResult fp = check_finite_poles(scan, scanned);
  rep.finite_poles_pass = fp.pass;
  rep.n0 = fp.n0;
  rep.n_scanned = scanned;
  if (rep.verdict == Verdict::Rejected) return rep;
  rep.verdict = fp.pass ? Verdict::Admissible : Verdict::Inconclusive;
  if (!fp.pass) rep.reason = RejectReason::TooManyPoles;
  return rep;
}

namespace {
nlohmann::json cjson(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }
std::string_view side_name(LatticeSide s) {
  switch (s) {
    case LatticeSide::Upper: return "upper";
    case LatticeSide::Lower: return "lower";
    case LatticeSide::Real: return "real";
  }
  return "?";
}
}  // namespace

void to_json(nlohmann::json& j, const AdmissibilityReport& r) {
  nlohmann::json poles = nlohmann::json::array();
  for (const auto& c : r.pole_candidates)
    poles.push_back({{"k", cjson(c.k)}, {"n", c.n}, {"side", side_name(c.side)}, {"residue", cjson(c.residue)}});
  nlohmann::json odd = nlohmann::json::array();
  for (const auto& z : r.smoothness.odd_zero_cells) odd.push_back(cjson(z));
  auto ran = [&](const char* gate) {
    return std::find(r.gates_run.begin(), r.gates_run.end(), gate) != r.gates_run.end();
  };
  j = {{"verdict", to_string(r.verdict)}, {"reason", to_string(r.reason)}, {"gates_run", r.gates_run}};
  j["smoothness"] = ran("smoothness") ? nlohmann::json{{"pass", r.smoothness_pass},
                                                       {"odd_zero_cells", odd},
                                                       {"qb_pole", r.smoothness.qb_pole},
                                                       {"max_r_deviation", r.smoothness.max_r_deviation}}
                                      : nlohmann::json(nullptr);
  j["decay"] = ran("decay") ? nlohmann::json{{"pass", r.decay_pass}, {"coefficient", cjson(r.decay_coefficient)}}
                            : nlohmann::json(nullptr);
  j["a3"] = ran("a3") ? nlohmann::json{{"pass", r.a3_pass},
                                       {"sup_qb", r.sup_qb_on_r},
                                       {"guard_collision", r.a3_guard_collision}}
                      : nlohmann::json(nullptr);
  j["poles"] = poles;
  j["finite_poles"] = ran("poles") ? nlohmann::json{{"pass", r.finite_poles_pass},
                                                    {"n0", r.n0},
                                                    {"n_scanned", r.n_scanned}}
                                   : nlohmann::json(nullptr);
}

}  // namespace hnls
