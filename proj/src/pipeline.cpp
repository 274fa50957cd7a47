#include "hnls/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hnls/error.hpp"
#include "hnls/monodromy.hpp"
#include "hnls/spectral.hpp"

namespace hnls {

PbModel pb_model_from_poles(const std::vector<PoleCandidate>& poles) {
  PbModel m;
  for (const auto& c : poles) {
    if (!c.nonzero || c.side == LatticeSide::Real) continue;
    m.poles.push_back(c.k);
    m.residues.push_back(c.residue);
  }
  return m;
}

double validate_model(const PeriodicPair& pair, const PbModel& model, double tol) {
  // Points between lattice rows and off both axes, at a few radii.
  const double s = std::sqrt(pair.omega());
  const Complex pts[] = {Complex(0.31, 0.43) * s, Complex(-0.57, 0.29) * s, Complex(0.83, -0.37) * s,
                         Complex(-0.22, -0.91) * s, Complex(1.27, 0.66) * s, Complex(-0.71, 1.13) * s};
  SpectralOptions so;
  so.monodromy.tol = tol;
  double err = 0.0;
  for (const Complex k : pts) {
    const Complex direct = spectral_sample(pair, k, so).pb;
    const Complex fitted = model.eval(k);
    err = std::max(err, std::abs(direct - fitted) / std::max(1e-3, std::abs(direct)));
  }
  return err;
}

BuildResult build(const PeriodicPair& pair, const BuildOptions& opts) {
  return build_from_report(pair, verdict(pair, opts.admissibility), opts);
}

BuildResult build_from_report(const PeriodicPair& pair, AdmissibilityReport report, const BuildOptions& opts) {
  BuildResult r;
  r.report = std::move(report);
  if (r.report.verdict != Verdict::Admissible)
    throw Error(ErrorKind::GateNotPassed, std::string("pair is ") + std::string(to_string(r.report.verdict)) +
                                              " (" + std::string(to_string(r.report.reason)) + ")");
  r.model = pb_model_from_poles(r.report.pole_candidates);
  r.model_error = validate_model(pair, r.model, opts.monodromy_tol);
  r.residue_sum_error = std::abs(r.model.residue_sum() + std::conj(pair.eval(0.0).g0) / (2.0 * kI));
  if (r.model_error > opts.model_tol) {
    r.report.verdict = Verdict::Inconclusive;
    r.report.reason = RejectReason::ModelMismatch;
    throw Error(ErrorKind::GateNotPassed,
                "pole model does not reproduce P^b (relative error " + std::to_string(r.model_error) + ")");
  }
  const ScalarFunctions sf = ScalarFunctions::from_model(r.model, pair.omega(), opts.cauchy);
  r.poles = h_residues(sf, r.model, pair.omega());
  return r;
}

namespace {
nlohmann::json cjson(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }
}  // namespace

void to_json(nlohmann::json& j, const BuildResult& r) {
  nlohmann::json model = nlohmann::json::array();
  for (std::size_t i = 0; i < r.model.poles.size(); ++i)
    model.push_back({{"k", cjson(r.model.poles[i])}, {"residue", cjson(r.model.residues[i])}});
  j = {{"admissibility", r.report},
       {"pb_model", model},
       {"model_error", r.model_error},
       {"residue_sum_error", r.residue_sum_error},
       {"pole_data", r.poles}};
}

}  // namespace hnls
