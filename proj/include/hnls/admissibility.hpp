#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hnls/boundary.hpp"
#include "hnls/types.hpp"

namespace hnls {

enum class Verdict { Admissible, Rejected, Inconclusive };

enum class RejectReason {
  None,
  OddZeroOfG,        // (A1): branch point of sqrt G
  PoleOfQbUpper,     // (A1): Q^b has a pole in Im k > 0
  Decay,             // (A2)
  SupQbNotBelowOne,  // (A3)
  RealAxisPole,      // P^b has a pole on R
  TooManyPoles,      // residues persist up to n_max
  ModelMismatch,     // pole model does not reproduce P^b
};

std::string_view to_string(Verdict v);
std::string_view to_string(RejectReason r);

struct A3Result {
  double sup = 0.0;
  double argmax = 0.0;
  bool pass = false;
  bool guard_collision = false;  // maximum sits at a guarded lattice point
};

struct A3Options {
  double L = -1.0;    // half-width; default 2 max(1, sqrt omega, |g0|, sqrt |g1|)
  int points = 121;
  double margin = 1e-6;
  double tol = 1e-8;  // monodromy tolerance
  int threads = 1;
};

A3Result check_a3(const PeriodicPair& pair, const A3Options& opts = {});
/// Same test for a closed-form |Q^b| evaluator on R; lattice guards are not applied.
A3Result check_a3(const std::function<Complex(double)>& qb, double L, int points, double margin = 1e-6);

enum class LatticeSide { Upper, Lower, Real };

struct PoleCandidate {
  Complex k;
  int n = 0;
  LatticeSide side = LatticeSide::Upper;
  Complex residue;       // (1/2 pi i) oint P^b dk
  Complex second;        // (1/2 pi i) oint P^b (k - kappa) dk, checked on R only
  double radius = 0.0;
  bool nonzero = false;
};

struct PoleOptions {
  int scan_nodes = 16;       // prescan trapezoid nodes
  int refine_nodes = 64;     // trapezoid nodes for retained poles
  double scan_tol = 1e-8;    // monodromy tolerance for the prescan
  double refine_tol = 1e-10; // for retained poles
  double residue_tol = 1e-6; // relative to max(1, |g0|) sqrt(omega)
  bool lower = true;         // also scan -i sqrt(n omega)/2
  bool real = true;          // and +-sqrt(n omega)/2
  int threads = 1;
};

/// Residue of P^b at a lattice point by the trapezoid rule on a circle.
Complex pb_contour_residue(const PeriodicPair& pair, Complex center, double radius, int nodes, double tol,
                           int power = 0);

/// Scans the lattice for n in [n_min, n_max]. Every scanned point is returned; `nonzero` marks the poles.
std::vector<PoleCandidate> locate_poles(const PeriodicPair& pair, int n_max = 32, double radius_factor = 0.25,
                                        const PoleOptions& opts = {}, int n_min = 1);

struct FinitePolesResult {
  bool pass = false;
  bool inconclusive = false;
  int n0 = 0;  // largest index with a nonzero residue
};

/// Passes when every nonzero off-axis residue has index at most n_scanned / 2.
FinitePolesResult check_finite_poles(const std::vector<PoleCandidate>& scan, int n_scanned);

struct DecayResult {
  bool pass = false;
  Complex coefficient;  // fitted lim k P^b(k)
  Complex expected;     // -conj(g0(0)) / (2i)
  double remainder_ratio = 0.0;
};

struct DecayOptions {
  double r0 = -1.0;  // default 1.5 max(1, sqrt omega, |g0|, sqrt |g1|)
  double angle = kPi / 8.0;
  double tol = 1e-7;
};

DecayResult check_decay(const PeriodicPair& pair, const DecayOptions& opts = {});

struct SmoothnessResult {
  bool pass = false;
  std::vector<Complex> odd_zero_cells;  // centres of cells with odd winding of G
  bool qb_pole = false;
  Complex qb_pole_cell;
  double max_r_deviation = 0.0;  // max |G / (-4 sin^2(2k^2 tau)) - 1| on the scanned edges
};

struct SmoothnessOptions {
  double half_width = -1.0;  // default 1.5 max(sqrt(omega)/2, |g0|, sqrt |g1|, 0.5)
  double height = -1.0;      // default half_width
  int columns = 6;
  int rows = 4;
  int edge_nodes = 8;
  int real_samples = 49;
  double tol = 1e-6;
  double qb_residue_tol = 1e-4;
  int threads = 1;
};

SmoothnessResult check_smoothness(const PeriodicPair& pair, const SmoothnessOptions& opts = {});

struct AdmissibilityOptions {
  int n_max = 32;
  /// Scan n = 1..max(min_scan, 2 N0) instead of the full window; N0 is the largest pole found.
  bool adaptive_scan = true;
  int min_scan = 8;
  double radius_factor = 0.25;
  bool early_exit = true;
  int threads = 1;  // overrides the per-gate settings
  A3Options a3;
  PoleOptions poles;
  DecayOptions decay;
  SmoothnessOptions smoothness;
};

struct AdmissibilityReport {
  double sup_qb_on_r = 0.0;
  bool a3_pass = false;
  bool a3_guard_collision = false;
  bool decay_pass = false;
  Complex decay_coefficient;
  bool smoothness_pass = false;
  SmoothnessResult smoothness;
  std::vector<PoleCandidate> pole_candidates;  // nonzero upper, lower and real poles
  bool finite_poles_pass = false;
  int n0 = 0;
  int n_scanned = 0;
  Verdict verdict = Verdict::Inconclusive;
  RejectReason reason = RejectReason::None;
  std::vector<std::string> gates_run;
};

/// Gates in order: smoothness (odd zeros of G, poles of Q^b), decay, (A3), real-axis poles, finiteness.
AdmissibilityReport verdict(const PeriodicPair& pair, const AdmissibilityOptions& opts = {});

void to_json(nlohmann::json& j, const AdmissibilityReport& r);

}  // namespace hnls
