#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conequant/exact_linalg.hpp"
#include "conequant/weyl.hpp"

namespace conequant {

using Vector = std::vector<Scalar>;

/// Pointed Lorentzian quadratic space: real form of signature (n-1,1) and a
/// covector w with q*(w) = Q(B^{-1} w) = -1.
struct Plqs {
  QuadraticForm form;
  Vector w;

  /// Validates signature, n > 2 and the normalization of w.
  Plqs(QuadraticForm form, Vector w);
  /// diag(1,...,1,-1) with w = z_n.
  static Plqs standard(std::size_t n);

  std::size_t dim() const { return form.dim(); }
  /// v_w = tau^{-1}(w).
  Vector pointed_vector() const;
};

/// q*(phi) = phi^T B^{-1} phi.
Scalar dual_norm(const QuadraticForm& form, const Vector& phi);

// Building blocks, all generic in the Gram matrix B.
Polynomial tau(const QuadraticForm& form, const Vector& v);
WeylElement box(const QuadraticForm& form);
WeylElement euler_h(std::size_t n);
WeylElement rotation(const QuadraticForm& form, const Vector& u, const Vector& v);
/// sum_ij B_ij z_i d z_j.
WeylElement phi_map(const QuadraticForm& form, const WeylElement& d);
/// phi*box - h*d_phi, with d_phi the derivative along B^{-1} phi.
WeylElement psi_map(const QuadraticForm& form, const Vector& phi);

struct LieBasisElement {
  enum class Kind { mult, rot, euler, one, psi };
  Kind kind;
  Vector a;  // covector for mult/psi, first vector for rot
  Vector b;  // second vector for rot
  WeylElement realization;
  std::string label;

  int weight() const;
  int order() const;
};

/// {tau(e_i)} ∪ {L_{e_i,e_j}}_{i<j} ∪ {h} ∪ {Psi(tau(e_i))} ∪ {1}; One is last so
/// that the first size-1 elements span s. Throws if a realization is not restrictable.
std::vector<LieBasisElement> build_spanning_set(const QuadraticForm& form);

/// Coordinates of cone operators relative to a fixed list of elements, modulo I*D(V).
class SpanSolver {
public:
  SpanSolver(const QuadraticForm& form, const std::vector<WeylElement>& elements);
  std::size_t size() const { return count_; }
  /// nullopt when x is not in the span modulo the ideal.
  std::optional<Vector> coordinates(const WeylElement& x) const;

private:
  const QuadraticForm* form_;
  std::size_t count_;
  std::vector<std::vector<std::pair<MultiIndex, Scalar>>> columns_;
  std::vector<MultiIndex> pivot_keys_;
  ExactMatrix pivot_inverse_;
};

class BracketNotInSpan : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bracket tensor c_ij^k of the spanning set, dense.
class StructureConstants {
public:
  explicit StructureConstants(std::size_t m) : m_(m), c_(m * m * m) {}
  std::size_t size() const { return m_; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * m_ + j) * m_ + k]; }
  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * m_ + j) * m_ + k]; }
  Vector bracket(const Vector& x, const Vector& y) const;
  friend bool operator==(const StructureConstants& a, const StructureConstants& b) { return a.c_ == b.c_; }

private:
  std::size_t m_;
  std::vector<Scalar> c_;
};

/// Computes every bracket by Weyl commutators and solves for its coordinates.
/// The OpenMP version distributes basis pairs; the serial one is the reference.
StructureConstants structure_constants(const QuadraticForm& form, const std::vector<LieBasisElement>& basis);
StructureConstants structure_constants_serial(const QuadraticForm& form, const std::vector<LieBasisElement>& basis);

/// s~ realized on a quadratic form: spanning set, coordinates and bracket tensor.
class ConeLieAlgebra {
public:
  explicit ConeLieAlgebra(QuadraticForm form);

  const QuadraticForm& form() const { return form_; }
  const std::vector<LieBasisElement>& basis() const { return basis_; }
  const StructureConstants& structure() const { return sc_; }
  std::size_t size() const { return basis_.size(); }
  std::size_t one_index() const { return basis_.size() - 1; }

  std::optional<Vector> coordinates(const WeylElement& x) const { return solver_.coordinates(x); }
  Vector require_coordinates(const WeylElement& x) const;
  WeylElement realize(const Vector& coords) const;

private:
  QuadraticForm form_;
  std::vector<LieBasisElement> basis_;
  SpanSolver solver_;
  StructureConstants sc_;
};

struct SoReport {
  std::size_t n = 0;
  std::size_t spanning_size = 0;
  std::size_t dim_s = 0;
  std::size_t expected_dim_s = 0;
  std::size_t jacobi_triples = 0;
  std::size_t jacobi_passed = 0;
  std::string jacobi_first_failure;
  bool antisymmetric = false;
  bool killing_nondegenerate = false;
  std::vector<std::size_t> graded_dims;  // weights 1, 0, -1
  bool graded_homogeneous = false;
  std::optional<Inertia> real_killing_inertia;
  bool ok() const;
};
SoReport verify_so_structure(const ConeLieAlgebra& algebra);

/// Killing form of s on the basis without One.
ExactMatrix killing_form(const StructureConstants& sc, std::size_t s_dim);

struct RelationReport {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::string first_failure;
  bool ok() const { return checked == passed; }
};
/// The bracket relations among tau, L, h, Psi, 1 for all listed vectors, under cone equality.
RelationReport verify_commutation_relations(const QuadraticForm& form, const std::vector<Vector>& vectors);
/// Phi∘Psi(phi) = (2-n) phi for every listed covector.
RelationReport verify_phi_psi(const QuadraticForm& form, const std::vector<Vector>& covectors);

struct Sl2Triple {
  WeylElement e;
  WeylElement h;
  WeylElement f;
};
/// e = i w, f = i Psi(w), h; throws std::logic_error if a relation fails.
Sl2Triple sl2_triple(const Plqs& plqs);

struct JmResult {
  bool consistent = false;
  std::size_t free_dimension = 0;
  Vector solution;
  bool equals_f = false;
  bool unique() const { return consistent && free_dimension == 0; }
};
/// Solves {[h,x] = -2x, [e,x] = h} for x in s.
JmResult jacobson_morozov(const Plqs& plqs, const ConeLieAlgebra& algebra);

struct DualPairResult {
  std::vector<Vector> k_basis;
  std::vector<Vector> l_basis;
  bool l_equals_sl2 = false;
  bool mutual = false;
  bool ok(std::size_t n) const;
};
/// k_w = so(v_w^perp) and its centralizer l_w inside s.
DualPairResult dual_pair(const Plqs& plqs, const ConeLieAlgebra& algebra);
/// Centralizer inside s (coordinates over the full basis, One coordinate zero).
std::vector<Vector> centralizer(const ConeLieAlgebra& algebra, const std::vector<Vector>& subset);
bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b);

/// Antilinear anti-involution on the span: tau(v)* = tau(v), L* = -L, h* = -h,
/// Psi* = Psi, 1* = 1 for real generators.
Vector star(const ConeLieAlgebra& algebra, const Vector& coords);
/// Multiplication by i^l on the weight-l piece.
Vector cayley(const ConeLieAlgebra& algebra, const Vector& coords);
struct StarCayley {
  WeylElement star;
  WeylElement cayley;
};
/// Throws std::invalid_argument when d is outside the span.
StarCayley star_and_cayley(const ConeLieAlgebra& algebra, const WeylElement& d);

/// kappa + lambda w + Psi(w) = kappa - i(lambda e + f).
WeylElement schrodinger_element(const Plqs& plqs, const Scalar& kappa, const Scalar& lambda);

/// Coordinates of an element of span{1, e, h, f}.
struct Sl2Combination {
  Scalar one;
  Scalar e;
  Scalar h;
  Scalar f;
  friend bool operator==(const Sl2Combination&, const Sl2Combination&) = default;
};
/// Star on span{1,e,h,f}: e* = -e, h* = -h, f* = -f, antilinear.
Sl2Combination star(const Sl2Combination& x);
Sl2Combination schrodinger_combination(const Scalar& kappa, const Scalar& lambda);
/// Throws std::invalid_argument when x is outside span{1,e,h,f}.
Sl2Combination sl2_decompose(const Plqs& plqs, const WeylElement& x);
WeylElement sl2_realize(const Plqs& plqs, const Sl2Combination& x);

/// Rational isometry of B from a B-skew Cayley parameter: g = (I-S)(I+S)^{-1}, S = B^{-1} K, K^T = -K.
ExactMatrix cayley_isometry(const QuadraticForm& form, const ExactMatrix& antisymmetric);

}  // namespace conequant
