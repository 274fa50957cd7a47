#pragma once

#include "json.hpp"

#include "hnls/admissibility.hpp"
#include "hnls/boundary.hpp"
#include "hnls/dressing.hpp"
#include "hnls/scalar_rh.hpp"

namespace hnls {

struct BuildOptions {
  AdmissibilityOptions admissibility;
  CauchyOptions cauchy;
  double model_tol = 1e-6;  // max relative |P_model - P^b| at the validation points
  double monodromy_tol = 1e-10;
};

struct BuildResult {
  AdmissibilityReport report;
  PbModel model;
  double model_error = 0.0;       // relative, at off-lattice validation points
  double residue_sum_error = 0.0; // |sum of residues + conj(g0(0))/(2i)|
  PoleData poles;                 // h-residues at the upper poles
};

/// Rational P^b from the nonzero upper and lower lattice residues of a scan.
PbModel pb_model_from_poles(const std::vector<PoleCandidate>& poles);

/// Largest relative deviation between the model and P^b at off-lattice points.
double validate_model(const PeriodicPair& pair, const PbModel& model, double tol = 1e-10);

/// Boundary pair to pole data: admissibility verdict, P^b model, a(k), h_j.
/// Throws GateNotPassed when the verdict is not Admissible or the model fails validation;
/// the report is attached to the message.
BuildResult build(const PeriodicPair& pair, const BuildOptions& opts = {});
/// Same, reusing a verdict already computed for this pair.
BuildResult build_from_report(const PeriodicPair& pair, AdmissibilityReport report, const BuildOptions& opts = {});

void to_json(nlohmann::json& j, const BuildResult& r);

}  // namespace hnls
