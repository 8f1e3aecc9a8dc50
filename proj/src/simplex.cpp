#include "majorant/simplex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace majorant {

std::vector<double> project_weighted_simplex(const std::vector<double>& y,
                                             const std::vector<double>& w) {
  const std::size_t m = y.size();
  if (m == 0) throw std::invalid_argument("projection onto empty simplex");
  if (w.size() != m) throw std::invalid_argument("weight/point size mismatch");
  for (double wi : w)
    if (!(wi > 0.0)) throw std::invalid_argument("simplex weights must be positive");

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return y[a] / w[a] > y[b] / w[b]; });

  // x_i = max(0, y_i - λ w_i); scan prefixes of descending ratios y_i/w_i and
  // keep the largest prefix whose candidate λ stays below its last ratio.
  double swy = 0.0, sww = 0.0, lambda = 0.0;
  bool found = false;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = order[k];
    swy += w[i] * y[i];
    sww += w[i] * w[i];
    const double cand = (swy - 1.0) / sww;
    if (y[i] / w[i] > cand) {
      lambda = cand;
      found = true;
    }
  }
  if (!found) lambda = (swy - 1.0) / sww;  // unreachable for w > 0; keeps λ defined

  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = std::max(0.0, y[i] - lambda * w[i]);
  return x;
}

}  // namespace majorant
