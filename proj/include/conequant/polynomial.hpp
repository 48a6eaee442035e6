#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "conequant/scalar.hpp"

namespace conequant {

/// Exponent vector; its length is the ambient dimension.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& a);

/// Graded lexicographic order: total degree first, ties broken lexicographically
/// with z1 the most significant variable.
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Pure lexicographic order (z1 > z2 > ...), used to cross-check division.
struct PureLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const { return a < b; }
};

enum class MonomialOrder { graded_lex, lex };

/// Sparse polynomial in n commuting variables with Q(i) coefficients.
/// Zero coefficients are never stored.
class Polynomial {
public:
  using Terms = std::map<MultiIndex, Scalar, GradedLex>;

  explicit Polynomial(std::size_t nvars = 0) : n_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Scalar& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const MultiIndex& exps, const Scalar& c = Scalar(1));
  /// Linear form sum_i coeffs[i] * z_i.
  static Polynomial linear(const std::vector<Scalar>& coeffs);

  std::size_t nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  Scalar coefficient(const MultiIndex& exps) const;

  void add_term(const MultiIndex& exps, const Scalar& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a) { return a * Scalar(-1); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Higher partial derivative d^alpha p.
  Polynomial derivative(const MultiIndex& alpha) const;
  /// Substitute z -> A z, i.e. z_i -> sum_j A[i][j] z_j.
  Polynomial linear_substitute(const std::vector<std::vector<Scalar>>& a) const;

private:
  std::size_t n_;
  Terms terms_;
};

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Multivariate division of p by a single divisor q under the given order.
/// For a principal ideal the remainder vanishes iff q divides p, whatever the order.
DivisionResult divide(const Polynomial& p, const Polynomial& q,
                      MonomialOrder order = MonomialOrder::graded_lex);

void check_same_dimension(std::size_t a, std::size_t b, const char* where);

}  // namespace conequant
