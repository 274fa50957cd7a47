#include "hnls/boundary.hpp"

#include <cmath>


#include "hnls/error.hpp"

namespace hnls {

namespace {

constexpr long kResyncInterval = 512;

Complex eval_modes(const std::vector<PeriodicPair::Mode>& modes, double t) {
  Complex sum{0.0, 0.0};
  for (const auto& m : modes) sum += m.coeff * std::polar(1.0, m.freq * t);
  return sum;
}

double mode_bound(const std::vector<PeriodicPair::Mode>& modes) {
  double s = 0.0;
  for (const auto& m : modes) s += std::abs(m.coeff);
  return s;
}

}  // namespace

PeriodicPair PeriodicPair::exponential(double alpha, double omega, Complex c) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::InvalidArgument, "exponential pair requires alpha > 0");
  if (omega == 0.0 || !std::isfinite(omega))
    throw Error(ErrorKind::InvalidArgument, "exponential pair requires omega != 0");
  PeriodicPair p;
  p.data_ = ExponentialData{alpha, omega, c};
  p.tau_ = 2.0 * kPi / std::abs(omega);
  p.build_modes();
  return p;
}

PeriodicPair PeriodicPair::fourier(double tau, std::vector<FourierMode> g0_modes,
                                   std::vector<FourierMode> g1_modes) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw Error(ErrorKind::InvalidArgument, "period tau must be positive");
  PeriodicPair p;
  p.data_ = FourierData{tau, std::move(g0_modes), std::move(g1_modes)};
  p.tau_ = tau;
  p.build_modes();
  return p;
}

PeriodicPair PeriodicPair::zero(double tau) { return fourier(tau, {}, {}); }

void PeriodicPair::build_modes() {
  g0_.clear();
  g1_.clear();
  if (const auto* e = std::get_if<ExponentialData>(&data_)) {
    g0_.push_back({e->omega, Complex(e->alpha, 0.0)});
    g1_.push_back({e->omega, e->c});
    return;
  }
  const auto& f = std::get<FourierData>(data_);
  const double w = 2.0 * kPi / f.tau;
  for (const auto& m : f.g0_modes) g0_.push_back({w * m.n, m.coeff});
  for (const auto& m : f.g1_modes) g1_.push_back({w * m.n, m.coeff});
}

BoundaryValues PeriodicPair::eval(double t) const {
  // Reduce the phase so that eval(t + tau) reproduces eval(t).
  double tr = std::fmod(t, tau_);
  if (tr < 0.0) tr += tau_;
  return {eval_modes(g0_, tr), eval_modes(g1_, tr)};
}

double PeriodicPair::g0_bound() const { return mode_bound(g0_); }
double PeriodicPair::g1_bound() const { return mode_bound(g1_); }

BoundaryValues eval_pair(const PeriodicPair& pair, double t) { return pair.eval(t); }

PeriodicPair make_exponential_family_d(double alpha, double omega) {
  if (!(alpha > 0.0) || !(omega > 0.0))
    throw Error(ErrorKind::InvalidArgument,
                "family D requires alpha > 0 and omega > 0 for admissibility");
  return PeriodicPair::exponential(alpha, omega, Complex(-alpha * std::sqrt(omega + alpha * alpha), 0.0));
}

BoundaryStepper::BoundaryStepper(const PeriodicPair& pair, double dt) : pair_(&pair), dt_(dt) {
  for (const auto& m : pair.g0_modes()) rot0_.push_back(std::polar(1.0, m.freq * dt));
  for (const auto& m : pair.g1_modes()) rot1_.push_back(std::polar(1.0, m.freq * dt));
  phase0_.resize(rot0_.size());
  phase1_.resize(rot1_.size());
  resync();
}

void BoundaryStepper::resync() {
  const double t = static_cast<double>(step_) * dt_;
  const auto& m0 = pair_->g0_modes();
  const auto& m1 = pair_->g1_modes();
  current_ = {};
  for (std::size_t i = 0; i < m0.size(); ++i) {
    phase0_[i] = m0[i].coeff * std::polar(1.0, std::fmod(m0[i].freq * t, 2.0 * kPi));
    current_.g0 += phase0_[i];
  }
  for (std::size_t i = 0; i < m1.size(); ++i) {
    phase1_[i] = m1[i].coeff * std::polar(1.0, std::fmod(m1[i].freq * t, 2.0 * kPi));
    current_.g1 += phase1_[i];
  }
}

void BoundaryStepper::advance() {
  ++step_;
  if (step_ % kResyncInterval == 0) {
    resync();
    return;
  }
  current_ = {};
  for (std::size_t i = 0; i < phase0_.size(); ++i) {
    phase0_[i] *= rot0_[i];
    current_.g0 += phase0_[i];
  }
  for (std::size_t i = 0; i < phase1_.size(); ++i) {
    phase1_[i] *= rot1_[i];
    current_.g1 += phase1_[i];
  }
}

void to_json(nlohmann::json& j, const PeriodicPair& pair) {
  if (pair.is_exponential()) {
    const auto& e = pair.as_exponential();
    j = {{"type", "exponential"}, {"alpha", e.alpha}, {"omega", e.omega}, {"c", {e.c.real(), e.c.imag()}}};
    return;
  }
  const auto& f = pair.as_fourier();
  auto modes = [](const std::vector<FourierMode>& ms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : ms) arr.push_back({m.n, m.coeff.real(), m.coeff.imag()});
    return arr;
  };
  j = {{"type", "fourier"}, {"tau", f.tau}, {"g0", modes(f.g0_modes)}, {"g1", modes(f.g1_modes)}};
}

PeriodicPair pair_from_json(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "exponential") {
      const auto& c = j.at("c");
      if (!c.is_array() || c.size() != 2) throw Error(ErrorKind::InvalidArgument, "\"c\" must be [re, im]");
      return PeriodicPair::exponential(j.at("alpha").get<double>(), j.at("omega").get<double>(),
                                       Complex(c[0].get<double>(), c[1].get<double>()));
    }
    if (type == "fourier") {
      auto modes = [](const nlohmann::json& arr) {
        std::vector<FourierMode> out;
        for (const auto& m : arr) {
          if (!m.is_array() || m.size() != 3)
            throw Error(ErrorKind::InvalidArgument, "Fourier modes must be [n, re, im]");
          out.push_back({m[0].get<int>(), Complex(m[1].get<double>(), m[2].get<double>())});
        }
        return out;
      };
      return PeriodicPair::fourier(j.at("tau").get<double>(), modes(j.value("g0", nlohmann::json::array())),
                                   modes(j.value("g1", nlohmann::json::array())));
    }
    throw Error(ErrorKind::InvalidArgument, "unknown pair type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed pair JSON: ") + e.what());
  }
}

}  // namespace hnls
