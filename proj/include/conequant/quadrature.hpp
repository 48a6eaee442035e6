#pragma once

#include <cstddef>
#include <vector>

namespace conequant {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t m);

/// m-point Gauss-Laguerre rule for the weight x^alpha e^{-x}. The weights are
/// returned for the bare integrand: sum_k w_k F(x_k) equals the integral of F
/// over (0, inf) whenever F = x^alpha e^{-x} p(x) with deg p <= 2m - 1. This
/// keeps them finite for large nodes where e^{-x} underflows.
QuadratureRule gauss_laguerre(std::size_t m, double alpha);

/// Orthonormal Laguerre polynomials l_0..l_{count-1} for the weight
/// x^alpha e^{-x} and their first two derivatives at x > 0. Values are
/// returned multiplied by exp(log_factor); the recurrence rescales internally
/// so that large x and count neither overflow nor underflow before the factor
/// is applied. Any of the output pointers may be null.
void orthonormal_laguerre(double x, double alpha, std::size_t count, double log_factor, double* values,
                          double* first, double* second);

}  // namespace conequant
