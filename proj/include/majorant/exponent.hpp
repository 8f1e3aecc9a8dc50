#pragma once

#include <stdexcept>

namespace majorant {

// The exponent pair (p, p') with p = 2j/(2j-1) and conjugate p' = 2j, j >= 1.
// p' is an even integer, which is what makes the 2j-norm computable exactly
// from coefficients; p itself is irrational in binary and carried as double.
class ExponentPair {
 public:
  explicit ExponentPair(int j) : j_(j) {
    if (j < 1) throw std::invalid_argument("exponent order j must be >= 1");
  }

  int j() const { return j_; }
  double p() const { return special_exponent(j_); }
  int p_conjugate() const { return 2 * j_; }

  static double special_exponent(int j) {
    if (j < 1) throw std::invalid_argument("exponent order j must be >= 1");
    return 2.0 * j / (2.0 * j - 1.0);
  }

 private:
  int j_;
};

// Convenience free function: p = 2j/(2j-1).
inline double special_exponent(int j) { return ExponentPair::special_exponent(j); }

}  // namespace majorant
