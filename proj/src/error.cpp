#include "hnls/error.hpp"

namespace hnls {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::SampleTooClose: return "SampleTooClose";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::GuardCollision: return "GuardCollision";
    case ErrorKind::ContourCrossesSingularity: return "ContourCrossesSingularity";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::TooCloseToContour: return "TooCloseToContour";
    case ErrorKind::GateNotPassed: return "GateNotPassed";
    case ErrorKind::PoleOfA: return "PoleOfA";
    case ErrorKind::CoincidentPoles: return "CoincidentPoles";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::EvalAtPole: return "EvalAtPole";
    case ErrorKind::OnBranchCut: return "OnBranchCut";
    case ErrorKind::SingularPoint: return "SingularPoint";
  }
  return "Unknown";
}

}  // namespace hnls
