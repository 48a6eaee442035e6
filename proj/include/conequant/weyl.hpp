#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "conequant/exact_linalg.hpp"
#include "conequant/polynomial.hpp"
#include "conequant/scalar.hpp"

namespace conequant {

/// Nondegenerate quadratic form Q(z) = sum_ij B_ij z_i z_j given by its
/// symmetric Gram matrix B, with B(u,v) = u^T B v.
class QuadraticForm {
public:
  explicit QuadraticForm(ExactMatrix gram);
  /// diag(1, ..., 1, -1).
  static QuadraticForm standard_lorentzian(std::size_t n);

  std::size_t dim() const { return gram_.rows(); }
  const ExactMatrix& gram() const { return gram_; }
  const ExactMatrix& gram_inverse() const { return inverse_; }
  const Polynomial& polynomial() const { return q_; }
  Scalar bilinear(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const;
  bool is_real() const;

private:
  ExactMatrix gram_;
  ExactMatrix inverse_;
  Polynomial q_;
};

/// Element of the Weyl algebra D(V) in normal form sum_alpha p_alpha(z) d^alpha
/// (coefficients to the left of derivatives).
class WeylElement {
public:
  using Terms = std::map<MultiIndex, Polynomial, GradedLex>;

  explicit WeylElement(std::size_t nvars = 0) : n_(nvars) {}
  WeylElement(const Polynomial& p);  // NOLINT: multiplication operator
  static WeylElement constant(std::size_t nvars, const Scalar& c);
  static WeylElement z(std::size_t nvars, std::size_t index);
  static WeylElement d(std::size_t nvars, std::size_t index);
  /// Directional derivative sum_i v_i d_i.
  static WeylElement directional(const std::vector<Scalar>& v);
  static WeylElement term(const Polynomial& coeff, const MultiIndex& alpha);

  std::size_t nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Operator order max |alpha|; -1 for zero.
  int order() const;
  Polynomial coefficient(const MultiIndex& alpha) const;

  void add_term(const MultiIndex& alpha, const Polynomial& coeff);

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  WeylElement& operator*=(const Scalar& c);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(WeylElement a, const Scalar& c) { return a *= c; }
  friend WeylElement operator*(const Scalar& c, WeylElement a) { return a *= c; }
  friend WeylElement operator-(const WeylElement& a) { return a * Scalar(-1); }
  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Apply the automorphism z -> A z, d -> A^{-T} d induced by an invertible A.
  WeylElement linear_change(const ExactMatrix& a) const;

private:
  std::size_t n_;
  Terms terms_;
};

/// Composition a∘b brought to normal form by the Leibniz rule.
WeylElement normal_mul(const WeylElement& a, const WeylElement& b);
WeylElement commutator(const WeylElement& a, const WeylElement& b);
/// Action on O_V.
Polynomial apply(const WeylElement& d, const Polynomial& f);

/// Piece of fixed rescaling weight l; k is the order of that piece, so the
/// piece lies in D^{k,l}.
struct GradedPiece {
  int order = 0;
  int weight = 0;
  WeylElement element;
};
/// Decomposition by C^x-weight (deg p - |alpha| per monomial), ascending weight.
std::vector<GradedPiece> bigrade(const WeylElement& d);

/// Every normal-form coefficient divisible by Q, i.e. d lies in I*D(V).
bool in_left_ideal(const WeylElement& d, const QuadraticForm& q,
                   MonomialOrder order = MonomialOrder::graded_lex);
/// d(I) ⊆ I, tested as d∘M_Q ∈ I*D(V). An operator sum p_alpha d^alpha whose
/// image lies in (Q) has every p_alpha in (Q): apply it to the monomials in
/// increasing degree and peel off one coefficient at a time.
bool preserves_ideal(const WeylElement& d, const QuadraticForm& q);
/// Canonical representative modulo I*D(V): every coefficient replaced by its
/// remainder on division by Q.
WeylElement reduce_mod_ideal(const WeylElement& d, const QuadraticForm& q);
/// Equality in D(C) for restrictable operators.
bool cone_equal(const WeylElement& a, const WeylElement& b, const QuadraticForm& q);

}  // namespace conequant
