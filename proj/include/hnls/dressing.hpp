#pragma once

#include <vector>

#include "json.hpp"

#include "hnls/types.hpp"

namespace hnls {

/// Poles k_j of h(k) on the upper imaginary lattice and their residues h_j.
struct PoleData {
  std::vector<Complex> poles;
  std::vector<Complex> residues;
  double omega = 1.0;
};

/// Checks distinctness (threshold 1e-8 sqrt(omega)), Im k_j > 0 and, when
/// require_lattice is set, k_j = i sqrt(n omega)/2 to within lattice_tol.
void validate_pole_data(const PoleData& pd, bool require_lattice = true, double lattice_tol = 1e-9);

/// d_j(x,t) = -h_j prod_{l != j}(k_j - k_l) / prod_l (k_j - conj k_l) e^{2i(k_j x + 2 k_j^2 t)}.
std::vector<Complex> d_coeffs(const PoleData& pd, double x, double t);

struct DressingStage {
  std::vector<Mat2> b;       // B_1..B_N in solve order
  double max_condition = 0;  // largest 2x2 condition number over the row solves
};

/// Explicit pole-only solution of the dressing problem.
///
/// Poles are solved in ascending |k_j| unless keep_order is set; the order used
/// is available through order().
class DressedSolution {
 public:
  explicit DressedSolution(PoleData pd, bool keep_order = false);

  const PoleData& pole_data() const { return pd_; }
  int n() const { return static_cast<int>(pd_.poles.size()); }
  double omega() const { return pd_.omega; }
  double tau() const { return 2.0 * kPi / pd_.omega; }
  /// order()[j] is the index in the input PoleData of the j-th solved pole.
  const std::vector<int>& order() const { return order_; }

  DressingStage solve(double x, double t) const;
  /// Determinants v1 w2 - v2 w1 of the per-stage systems; stops at the first singular stage.
  std::vector<Complex> stage_determinants(double x, double t) const;
  /// u = 2i sum_j (B_j)_{12}.
  Complex u(double x, double t) const;
  /// (kI + B_N)...(kI + B_1) diag(1/prod(k - k_j), 1/prod(k - conj k_j)).
  Mat2 mhat(double x, double t, Complex k) const;
  Mat2 mhat(const DressingStage& st, Complex k) const;
  /// Column 0 is regular at conj k_j, column 1 at k_j.
  Vec2 mhat_column(const DressingStage& st, Complex k, int col) const;
  /// Unnormalised matrix polynomial (kI + B_N)...(kI + B_1).
  Mat2 polynomial(const DressingStage& st, Complex k) const;

 private:
  DressingStage run(double x, double t, std::vector<Complex>* dets) const;

  PoleData pd_;  // reordered into solve order
  std::vector<int> order_;
};

std::vector<Mat2> solve_dressing(const PoleData& pd, double x, double t);
Complex u_of_xt(const DressedSolution& sol, double x, double t);

struct ResidueCheck {
  double max_error = 0.0;  // over all k_j and conj k_j
};

/// Compares contour residues of the columns of M-hat with the pole conditions
/// Res_{k_j} M_1 = -h_j e^{2i(k_j x + 2k_j^2 t)} M_2(k_j) and its conjugate at conj k_j.
ResidueCheck residue_conditions(const DressedSolution& sol, double x, double t, int nodes = 64);

void to_json(nlohmann::json& j, const PoleData& pd);
PoleData pole_data_from_json(const nlohmann::json& j);

}  // namespace hnls
