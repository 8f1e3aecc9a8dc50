#include "majorant/spectral_core.hpp"

#include <cmath>
#include <stdexcept>

namespace majorant {

CoefficientSequence convolve(const CoefficientSequence& a, const CoefficientSequence& b) {
  CoefficientSequence::Map acc;
  for (const auto& [na, va] : a.entries())
    for (const auto& [nb, vb] : b.entries()) acc[na + nb] += va * vb;
  return CoefficientSequence::from_map(acc);
}

CoefficientSequence reflect_conjugate(const CoefficientSequence& a) {
  CoefficientSequence out;
  for (const auto& [n, v] : a.entries()) out.set(-n, std::conj(v));
  return out;
}

CoefficientSequence power_product(const CoefficientSequence& g, int j) {
  if (j < 1) throw std::invalid_argument("power_product requires j >= 1");
  if (j == 1) return g;
  const CoefficientSequence square = convolve(reflect_conjugate(g), g);  // |g|^2
  CoefficientSequence acc = g;
  for (int i = 1; i < j; ++i) acc = convolve(acc, square);
  return acc;
}

CoefficientSequence exact_majorant(const CoefficientSequence& a) {
  CoefficientSequence out;
  for (const auto& [n, v] : a.entries()) out.set(n, std::abs(v));
  return out;
}

double even_power_sum(const CoefficientSequence& g, int j) {
  if (j < 1) throw std::invalid_argument("even_power_sum requires j >= 1");
  CoefficientSequence conv = g;
  for (int i = 1; i < j; ++i) conv = convolve(conv, g);
  double sum = 0.0, comp = 0.0;  // Kahan
  for (const auto& [n, v] : conv.entries()) {
    const double term = std::norm(v);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double norm_even(const CoefficientSequence& g, int j) {
  if (j < 1) throw std::invalid_argument("norm_even requires j >= 1");
  if (g.empty()) return 0.0;
  return std::pow(even_power_sum(g, j), 1.0 / (2.0 * j));
}

}  // namespace majorant
