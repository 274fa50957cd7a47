#pragma once

#include <vector>

namespace hnls {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; cached per n.
const GaussRule& gauss_legendre(int n);

}  // namespace hnls
