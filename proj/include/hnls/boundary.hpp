#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hnls/types.hpp"

namespace hnls {

/// Single-exponential pair {alpha e^{i omega t}, c e^{i omega t}}.
struct ExponentialData {
  double alpha = 1.0;
  double omega = 1.0;
  Complex c{0.0, 0.0};
};

struct FourierMode {
  int n = 0;
  Complex coeff{0.0, 0.0};
};

/// Truncated Fourier pair: g(t) = sum_n coeff_n e^{i n (2 pi / tau) t}.
struct FourierData {
  double tau = 2.0 * kPi;
  std::vector<FourierMode> g0_modes;
  std::vector<FourierMode> g1_modes;
};

struct BoundaryValues {
  Complex g0;
  Complex g1;
};

/// A smooth tau-periodic Dirichlet/Neumann pair {g0(t), g1(t)}.
///
/// Immutable after construction. The period of an exponential pair is
/// 2 pi / |omega|, so omega must be nonzero.
class PeriodicPair {
 public:
  static PeriodicPair exponential(double alpha, double omega, Complex c);
  static PeriodicPair fourier(double tau, std::vector<FourierMode> g0_modes,
                              std::vector<FourierMode> g1_modes);
  /// The pair {0, 0} with period tau.
  static PeriodicPair zero(double tau = 2.0 * kPi);

  bool is_exponential() const { return std::holds_alternative<ExponentialData>(data_); }
  const ExponentialData& as_exponential() const { return std::get<ExponentialData>(data_); }
  const FourierData& as_fourier() const { return std::get<FourierData>(data_); }

  double tau() const { return tau_; }
  /// Lattice frequency 2 pi / tau; the pole lattice is {+-sqrt(n w)/2, +-i sqrt(n w)/2}.
  double omega() const { return 2.0 * kPi / tau_; }

  BoundaryValues eval(double t) const;

  /// Upper bounds of |g0| and |g1| over a period (sum of mode moduli).
  double g0_bound() const;
  double g1_bound() const;

  /// Modes as (angular frequency, coefficient) pairs.
  struct Mode {
    double freq;
    Complex coeff;
  };
  const std::vector<Mode>& g0_modes() const { return g0_; }
  const std::vector<Mode>& g1_modes() const { return g1_; }

 private:
  PeriodicPair() = default;
  void build_modes();

  std::variant<ExponentialData, FourierData> data_;
  double tau_ = 2.0 * kPi;
  std::vector<Mode> g0_;
  std::vector<Mode> g1_;
};

BoundaryValues eval_pair(const PeriodicPair& pair, double t);

/// The admissible single-exponential pair with c = -alpha sqrt(omega + alpha^2).
PeriodicPair make_exponential_family_d(double alpha, double omega);

/// Generates boundary values on the uniform grid t_j = j * dt by phase
/// rotation, resynchronising with exact evaluation periodically.
class BoundaryStepper {
 public:
  BoundaryStepper(const PeriodicPair& pair, double dt);

  const BoundaryValues& current() const { return current_; }
  void advance();

 private:
  void resync();

  const PeriodicPair* pair_;
  double dt_;
  long step_ = 0;
  std::vector<Complex> phase0_, rot0_, phase1_, rot1_;
  BoundaryValues current_{};
};

void to_json(nlohmann::json& j, const PeriodicPair& pair);
PeriodicPair pair_from_json(const nlohmann::json& j);

}  // namespace hnls
