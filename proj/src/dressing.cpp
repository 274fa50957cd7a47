#include "hnls/dressing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hnls/error.hpp"

namespace hnls {

namespace {

// Solves [[a, b], [c, d]] (x, y)^T = (e, f)^T with partial pivoting.
Vec2 solve2(Complex a, Complex b, Complex c, Complex d, Complex e, Complex f, bool& singular) {
  if (std::abs(c) > std::abs(a)) {
    std::swap(a, c);
    std::swap(b, d);
    std::swap(e, f);
  }
  singular = a == Complex(0.0);
  if (singular) return Vec2::Zero();
  const Complex m = c / a;
  const Complex d2 = d - m * b;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (std::abs(d2) <= 1e-14 * scale) {
    singular = true;
    return Vec2::Zero();
  }
  const Complex y = (f - m * e) / d2;
  return Vec2((e - b * y) / a, y);
}

double condition2(const Mat2& m) {
  const Complex det = m.determinant();
  if (det == Complex(0.0)) return std::numeric_limits<double>::infinity();
  return m.norm() * m.norm() / std::abs(det);
}

Complex exp_phase(Complex k, double x, double t) { return std::exp(2.0 * kI * (k * x + 2.0 * k * k * t)); }

}  // namespace

void validate_pole_data(const PoleData& pd, bool require_lattice, double lattice_tol) {
  if (pd.poles.size() != pd.residues.size())
    throw Error(ErrorKind::InvalidArgument, "poles and residues differ in length");
  if (!(pd.omega > 0.0)) throw Error(ErrorKind::InvalidArgument, "omega must be positive");
  const double thr = 1e-8 * std::sqrt(pd.omega);
  for (std::size_t j = 0; j < pd.poles.size(); ++j) {
    if (!(pd.poles[j].imag() > 0.0)) throw Error(ErrorKind::InvalidArgument, "poles must lie in Im k > 0");
    if (require_lattice) {
      const double n = 4.0 * std::norm(pd.poles[j]) / pd.omega;
      if (std::abs(pd.poles[j].real()) > lattice_tol || std::abs(n - std::round(n)) > lattice_tol * (1.0 + n))
        throw Error(ErrorKind::InvalidArgument, "pole is not on the lattice i sqrt(n omega)/2");
    }
    for (std::size_t l = 0; l < j; ++l)
      if (std::abs(pd.poles[j] - pd.poles[l]) < thr)
        throw Error(ErrorKind::CoincidentPoles, "poles " + std::to_string(l) + " and " + std::to_string(j) + " coincide");
  }
}

std::vector<Complex> d_coeffs(const PoleData& pd, double x, double t) {
  const std::size_t n = pd.poles.size();
  const double thr = 1e-8 * std::sqrt(pd.omega);
  std::vector<Complex> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex kj = pd.poles[j];
    Complex num = 1.0, den = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l != j) {
        if (std::abs(kj - pd.poles[l]) < thr) throw Error(ErrorKind::CoincidentPoles, "coincident poles");
        num *= kj - pd.poles[l];
      }
      den *= kj - std::conj(pd.poles[l]);
    }
    d[j] = -pd.residues[j] * num / den * exp_phase(kj, x, t);
  }
  return d;
}

DressedSolution::DressedSolution(PoleData pd, bool keep_order) {
  validate_pole_data(pd, false);
  order_.resize(pd.poles.size());
  std::iota(order_.begin(), order_.end(), 0);
  if (!keep_order)
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return std::abs(pd.poles[a]) < std::abs(pd.poles[b]); });
  pd_.omega = pd.omega;
  for (int i : order_) {
    pd_.poles.push_back(pd.poles[i]);
    pd_.residues.push_back(pd.residues[i]);
  }
}

Mat2 DressedSolution::polynomial(const DressingStage& st, Complex k) const {
  Mat2 p = Mat2::Identity();
  for (const Mat2& b : st.b) p = (k * Mat2::Identity() + b) * p;
  return p;
}

DressingStage DressedSolution::solve(double x, double t) const { return run(x, t, nullptr); }

std::vector<Complex> DressedSolution::stage_determinants(double x, double t) const {
  std::vector<Complex> dets;
  run(x, t, &dets);
  return dets;
}

DressingStage DressedSolution::run(double x, double t, std::vector<Complex>* dets) const {
  const std::vector<Complex> d = d_coeffs(pd_, x, t);
  DressingStage st;
  for (int j = 0; j < n(); ++j) {
    const Complex kj = pd_.poles[j];
    const Complex kc = std::conj(kj);
    Mat2 at_k = Mat2::Identity(), at_kc = Mat2::Identity();
    for (const Mat2& b : st.b) {
      at_k = (kj * Mat2::Identity() + b) * at_k;
      at_kc = (kc * Mat2::Identity() + b) * at_kc;
    }
    const Vec2 v = at_k * Vec2(1.0, -d[j]);
    const Vec2 w = at_kc * Vec2(-std::conj(d[j]), 1.0);
    Mat2 sys;
    sys << v(0), v(1), w(0), w(1);
    if (dets) dets->push_back(sys.determinant());
    st.max_condition = std::max(st.max_condition, condition2(sys));
    Mat2 b;
    for (int r = 0; r < 2; ++r) {
      bool singular = false;
      const Vec2 row = solve2(v(0), v(1), w(0), w(1), -kj * v(r), -kc * w(r), singular);
      if (singular && dets) return st;
      if (singular)
        throw SingularSystemError(x, t, "dressing system is singular at x=" + std::to_string(x) +
                                            ", t=" + std::to_string(t));
      b(r, 0) = row(0);
      b(r, 1) = row(1);
    }
    st.b.push_back(b);
  }
  return st;
}

Complex DressedSolution::u(double x, double t) const {
  const DressingStage st = solve(x, t);
  Complex s = 0.0;
  for (const Mat2& b : st.b) s += b(0, 1);
  return 2.0 * kI * s;
}

Vec2 DressedSolution::mhat_column(const DressingStage& st, Complex k, int col) const {
  Complex p = 1.0;
  for (const Complex kj : pd_.poles) {
    const Complex pole = col == 0 ? kj : std::conj(kj);
    if (std::abs(k - pole) < 1e-14 * std::max(1.0, std::abs(kj)))
      throw Error(ErrorKind::EvalAtPole, "M-hat column evaluated at its pole");
    p *= k - pole;
  }
  return polynomial(st, k).col(col) / p;
}

Mat2 DressedSolution::mhat(const DressingStage& st, Complex k) const {
  Complex p1 = 1.0, p2 = 1.0;
  for (const Complex kj : pd_.poles) {
    const double thr = 1e-14 * std::max(1.0, std::abs(kj));
    if (std::abs(k - kj) < thr || std::abs(k - std::conj(kj)) < thr)
      throw Error(ErrorKind::EvalAtPole, "M-hat evaluated at a pole");
    p1 *= k - kj;
    p2 *= k - std::conj(kj);
  }
  Mat2 m = polynomial(st, k);
  m.col(0) /= p1;
  m.col(1) /= p2;
  return m;
}

Mat2 DressedSolution::mhat(double x, double t, Complex k) const { return mhat(solve(x, t), k); }

std::vector<Mat2> solve_dressing(const PoleData& pd, double x, double t) {
  return DressedSolution(pd).solve(x, t).b;
}

Complex u_of_xt(const DressedSolution& sol, double x, double t) { return sol.u(x, t); }

ResidueCheck residue_conditions(const DressedSolution& sol, double x, double t, int nodes) {
  const DressingStage st = sol.solve(x, t);
  const auto& poles = sol.pole_data().poles;
  const auto& res = sol.pole_data().residues;
  ResidueCheck out;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < poles.size(); ++j) {
    gap = std::min(gap, 2.0 * poles[j].imag());
    for (std::size_t l = 0; l < j; ++l) gap = std::min(gap, std::abs(poles[j] - poles[l]));
  }
  const double r = gap / 4.0;
  for (std::size_t j = 0; j < poles.size(); ++j) {
    for (const bool upper : {true, false}) {
      const Complex c = upper ? poles[j] : std::conj(poles[j]);
      Vec2 acc = Vec2::Zero();
      for (int q = 0; q < nodes; ++q) {
        const Complex dz = r * std::polar(1.0, 2.0 * kPi * q / nodes);
        const Mat2 m = sol.mhat(st, c + dz);
        acc += (upper ? m.col(0) : m.col(1)) * dz;
      }
      acc /= static_cast<double>(nodes);
      Vec2 expect;
      if (upper) {
        expect = -res[j] * exp_phase(c, x, t) * sol.mhat_column(st, c, 1);
      } else {
        expect = -std::conj(res[j]) * std::exp(-2.0 * kI * (c * x + 2.0 * c * c * t)) * sol.mhat_column(st, c, 0);
      }
      out.max_error = std::max(out.max_error, (acc - expect).cwiseAbs().maxCoeff());
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const PoleData& pd) {
  auto arr = [](const std::vector<Complex>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const Complex z : v) a.push_back({z.real(), z.imag()});
    return a;
  };
  j = {{"omega", pd.omega}, {"poles", arr(pd.poles)}, {"residues", arr(pd.residues)}};
}

PoleData pole_data_from_json(const nlohmann::json& j) {
  try {
    PoleData pd;
    pd.omega = j.at("omega").get<double>();
    auto read = [](const nlohmann::json& a) {
      std::vector<Complex> v;
      for (const auto& z : a) {
        if (!z.is_array() || z.size() != 2) throw Error(ErrorKind::InvalidArgument, "complex values must be [re, im]");
        v.emplace_back(z[0].get<double>(), z[1].get<double>());
      }
      return v;
    };
    pd.poles = read(j.at("poles"));
    pd.residues = read(j.at("residues"));
    validate_pole_data(pd, false);
    return pd;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed solution descriptor: ") + e.what());
  }
}

}  // namespace hnls
