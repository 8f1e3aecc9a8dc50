#pragma once

#include "majorant/coefficient_sequence.hpp"

namespace majorant {

// Coefficient-space convolution: (a*b)^(n) = sum_k a(k) b(n-k). This is the
// coefficient sequence of the pointwise product of the two polynomials.
CoefficientSequence convolve(const CoefficientSequence& a, const CoefficientSequence& b);

// Coefficients of the complex conjugate polynomial: n -> conj(a(-n)).
CoefficientSequence reflect_conjugate(const CoefficientSequence& a);

// Coefficients of conj(g)^(j-1) * g^j, computed as (conj(g)*g)^(j-1) * g in
// coefficient space. j = 1 returns g itself. Throws std::invalid_argument
// for j < 1.
CoefficientSequence power_product(const CoefficientSequence& g, int j);

// Entrywise absolute value: the minimal sequence that dominates |a| at every
// frequency.
CoefficientSequence exact_majorant(const CoefficientSequence& a);

// sum_n |(g^(*j))(n)|^2  ==  ||g||_{2j}^{2j}  (Parseval on the j-fold
// self-convolution; exact up to rounding, no quadrature).
double even_power_sum(const CoefficientSequence& g, int j);

// ||g||_{2j} = even_power_sum(g, j)^(1/(2j)). Throws for j < 1.
double norm_even(const CoefficientSequence& g, int j);

}  // namespace majorant
