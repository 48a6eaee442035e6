#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>

#include "conequant/cone_lie.hpp"
#include "conequant/scalar.hpp"

namespace conequant {

/// Finite Laurent polynomial in t over Q(i).
class Laurent {
public:
  using Terms = std::map<int, Scalar>;

  Laurent() = default;
  Laurent(const Scalar& c);  // NOLINT: constants embed implicitly
  static Laurent monomial(int exponent, const Scalar& c = Scalar(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Smallest exponent present; 0 for the zero polynomial.
  int min_exponent() const;
  Scalar coefficient(int exponent) const;
  void add_term(int exponent, const Scalar& c);
  Laurent derivative() const;
  std::complex<double> evaluate(double t) const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Scalar& c);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(Laurent a, const Scalar& c) { return a *= c; }
  friend Laurent operator*(const Scalar& c, Laurent a) { return a *= c; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

private:
  Terms terms_;
};

/// Sum_j c_j(t) d_t^j with Laurent coefficients, coefficients on the left.
class RadialOperator {
public:
  using Terms = std::map<int, Laurent>;

  RadialOperator() = default;
  RadialOperator(const Laurent& c);  // NOLINT: multiplication operator
  static RadialOperator derivative(int order = 1);

  const Terms& terms() const { return terms_; }
  int order() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  Laurent coefficient(int j) const;
  void add_term(int j, const Laurent& c);

  RadialOperator& operator+=(const RadialOperator& o);
  RadialOperator& operator-=(const RadialOperator& o);
  RadialOperator& operator*=(const Scalar& c);
  friend RadialOperator operator+(RadialOperator a, const RadialOperator& b) { return a += b; }
  friend RadialOperator operator-(RadialOperator a, const RadialOperator& b) { return a -= b; }
  friend RadialOperator operator*(RadialOperator a, const Scalar& c) { return a *= c; }
  friend RadialOperator operator*(const Scalar& c, RadialOperator a) { return a *= c; }
  friend bool operator==(const RadialOperator& a, const RadialOperator& b) { return a.terms_ == b.terms_; }

  /// Value of the operator applied to a function with derivatives f[0..order] at t.
  std::complex<double> apply_numeric(double t, const double* f_derivs) const;
  std::string to_string() const;

private:
  Terms terms_;
};

/// Raised when a composition produces a power of t below -1.
class LaurentClassError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Composition via the Leibniz rule; throws LaurentClassError if the result
/// has an exponent below -1.
RadialOperator compose(const RadialOperator& a, const RadialOperator& b);
RadialOperator commutator(const RadialOperator& a, const RadialOperator& b);

enum class Cone { upper, lower };

struct IsotypicParams {
  int ell = 0;
  Cone cone = Cone::upper;
};

/// E -> i t, H -> 2t d + 2, F -> i(t d^2 + 2d - l(l+1)/t), 1 -> 1 on the upper
/// cone; on the lower cone t is replaced by -t, which keeps the model a representation.
RadialOperator isotypic_restrict(const Sl2Combination& x, const IsotypicParams& p);
/// Throws std::invalid_argument if x is outside span{1,e,h,f}.
RadialOperator isotypic_restrict(const Plqs& plqs, const WeylElement& x, const IsotypicParams& p);

/// Bracket on span{1,e,h,f} from [e,f] = h, [h,e] = 2e, [h,f] = -2f.
Sl2Combination sl2_bracket(const Sl2Combination& x, const Sl2Combination& y);

/// r * (d^2 + (2/r) d - l(l+1)/r^2 + kappa/r + lambda), built independently of the sl2 side.
RadialOperator physics_operator(int ell, const Scalar& kappa, const Scalar& lambda);
/// Exact coefficient comparison of the radial Schrodinger element with physics_operator.
bool physics_identity(const Scalar& kappa, const Scalar& lambda, int ell);
/// Same with symbolic kappa and lambda: the constant, kappa- and lambda-coefficients
/// of both sides are compared separately.
bool physics_identity(int ell);
/// Compare an arbitrary operator against physics_operator (negative controls).
bool matches_physics(const RadialOperator& op, const Scalar& kappa, const Scalar& lambda, int ell);

/// h^2/2 + ef + fe in the radial model; throws std::logic_error unless it is a scalar.
Laurent casimir_scalar(int ell);

/// t -> -t followed by an overall sign change. Maps the radial S_kappa(lambda)
/// to S_{-kappa}(lambda) and has the same kernel as the lower-cone restriction.
RadialOperator lower_cone_transform(const RadialOperator& op);

/// op(t^mu) = t^mu * sum_k r_k t^k; returns the Laurent factor r.
Laurent apply_to_power(const RadialOperator& op, const Scalar& mu);
/// Applies the conjugated operator 1 + 2i nu + 2i nu t d (the radial image of
/// 1 + i nu H) to t^mu; true iff the result vanishes identically.
bool power_solution_check(const Scalar& nu, int ell, const Scalar& mu);
/// Default exponent -1 + i/(2 nu).
bool power_solution_check(const Scalar& nu, int ell);

}  // namespace conequant
