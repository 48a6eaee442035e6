#pragma once

#include <random>

#include "conequant/weyl.hpp"

namespace testutil {

using conequant::MultiIndex;
using conequant::Polynomial;
using conequant::Scalar;
using conequant::WeylElement;

inline MultiIndex random_index(std::mt19937& rng, std::size_t n, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  MultiIndex a(n, 0);
  const int d = deg(rng);
  for (int k = 0; k < d; ++k) ++a[var(rng)];
  return a;
}

inline Scalar random_scalar(std::mt19937& rng, bool complex = true) {
  std::uniform_int_distribution<long> c(-3, 3);
  std::uniform_int_distribution<long> den(1, 3);
  Scalar s = Scalar::rational(c(rng), den(rng));
  if (complex) s += Scalar::i() * Scalar(c(rng));
  if (s.is_zero()) s = Scalar(1);
  return s;
}

inline Polynomial random_polynomial(std::mt19937& rng, std::size_t n, int max_degree, int terms = 3) {
  Polynomial p(n);
  for (int k = 0; k < terms; ++k) p.add_term(random_index(rng, n, max_degree), random_scalar(rng));
  return p;
}

inline WeylElement random_weyl(std::mt19937& rng, std::size_t n, int max_degree, int max_order, int terms = 3) {
  WeylElement d(n);
  for (int k = 0; k < terms; ++k)
    d += WeylElement::term(random_polynomial(rng, n, max_degree, 1), random_index(rng, n, max_order));
  return d;
}

/// z_0^{a_0} ... as a polynomial.
inline Polynomial mono(const MultiIndex& a) { return Polynomial::monomial(a); }

}  // namespace testutil
