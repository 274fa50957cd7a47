#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hnls {

enum class ErrorKind {
  InvalidArgument,
  NonConvergence,
  SampleTooClose,
  DegenerateDenominator,
  GuardCollision,
  ContourCrossesSingularity,
  Inconclusive,
  TooCloseToContour,
  GateNotPassed,
  PoleOfA,
  CoincidentPoles,
  SingularSystem,
  EvalAtPole,
  OnBranchCut,
  SingularPoint,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the dressing solve; carries the offending point.
class SingularSystemError : public Error {
 public:
  SingularSystemError(double x, double t, const std::string& what)
      : Error(ErrorKind::SingularSystem, what), x_(x), t_(t) {}

  double x() const noexcept { return x_; }
  double t() const noexcept { return t_; }

 private:
  double x_;
  double t_;
};

}  // namespace hnls
