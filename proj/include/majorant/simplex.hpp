#pragma once

#include <vector>

namespace majorant {

// Euclidean projection of y onto the weighted simplex
//   { x : x_i >= 0, sum_i w_i x_i = 1 },  all w_i > 0.
// Exact finite algorithm: the projection has the form
// x_i = max(0, y_i - λ w_i), and the correct λ is found by sorting the
// breakpoints y_i / w_i and scanning prefix sums. Throws
// std::invalid_argument on empty input, nonpositive weights, or a size
// mismatch.
std::vector<double> project_weighted_simplex(const std::vector<double>& y,
                                             const std::vector<double>& w);

}  // namespace majorant
