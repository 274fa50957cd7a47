#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hnls/types.hpp"
#include "hnls/verify.hpp"

namespace hnls {

/// Shortest locale-independent text with 17 significant digits.
std::string format_double(double v);

/// u on the grid, x-major: index i * nt + j holds u(x_i, t_j).
/// If any evaluation throws, the exception of the lowest index is rethrown, so the
/// reported point does not depend on scheduling.
std::vector<Complex> evaluate_grid(const Field& u, const Grid& grid, int threads = 1);

/// Header "x,t,re_u,im_u" followed by one row per grid point in evaluate_grid order.
void write_csv(std::ostream& os, const Grid& grid, const std::vector<Complex>& values);

}  // namespace hnls
