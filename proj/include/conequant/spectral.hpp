#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "conequant/radial.hpp"

namespace conequant {

class SpectralError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// phi_k(t) = sqrt(2) beta (beta t)^l e^{-beta t/2} l_k(beta t), with l_k the
/// orthonormal Laguerre polynomials of parameter 2l+1. Orthonormal for the
/// half-line weight t dt / 2.
struct RadialBasis {
  int ell = 0;
  std::size_t size = 0;
  double beta = 1.0;
};

/// Throws std::invalid_argument unless size >= 1, beta > 0 and ell >= 0.
RadialBasis build_basis(int ell, std::size_t size, double beta);

/// Values and first two t-derivatives of phi_0..phi_{size-1} at t > 0.
void evaluate_basis(const RadialBasis& basis, double t, double* values, double* d1, double* d2);

/// Gram matrix under the module's quadrature (the identity up to rounding).
Eigen::MatrixXd gram_matrix(const RadialBasis& basis);

struct Pencil {
  RadialBasis basis;
  double kappa = 0.0;
  Eigen::MatrixXd a;  // t d^2 + 2 d - l(l+1)/t + kappa
  Eigen::MatrixXd b;  // multiplication by t
  double asymmetry = 0.0;  // max |A - A^T| before symmetrization
};

/// Quadrature assembly; the node evaluations and matrix products are split
/// across OpenMP threads. Throws SpectralError if |A - A^T| exceeds
/// 1e-10 * max(1, max|A|).
Pencil assemble_pencil(const RadialBasis& basis, double kappa);
/// Single-threaded reference with the same summation order.
Pencil assemble_pencil_serial(const RadialBasis& basis, double kappa);

/// Values of -(mu) for A psi = mu B psi, i.e. the lambda with A psi = -lambda B psi,
/// ascending. Throws SpectralError if B is not positive definite.
std::vector<double> pencil_lambdas(const Pencil& pencil);

struct Eigenpair {
  double lambda;
  double residual;  // |(A + lambda B) psi| / |B psi|
};
/// All eigenpairs, lambda ascending.
std::vector<Eigenpair> pencil_eigenpairs(const Pencil& pencil);

/// Negative lambdas ascending (most bound first), at most count of them (0 = all).
std::vector<double> bound_states(const Pencil& pencil, std::size_t count = 0);

/// kappa after restricting to a half cone: the lower cone flips its sign.
double effective_kappa(double kappa, Cone cone);

/// Relative tolerance for level n at N = 200: 1e-8 up to n = 3, 1e-3 up to n = 6, else 1e-2.
double level_tolerance(int n);

struct LevelRow {
  int n = 0;
  int ell = 0;
  double lambda = 0.0;  // nearest computed eigenvalue
  double expected = 0.0;
  double rel_err = 0.0;
  double residual = 0.0;
  std::size_t size = 0;
  double beta = 0.0;
  bool found = false;
};

/// Pencils with ell >= n must not show the level -kappa^2/(4n^2).
struct AbsenceRow {
  int n = 0;
  int ell = 0;
  double nearest_rel_err = 0.0;
  bool absent = false;
};

struct SpectrumReport {
  double kappa = 0.0;
  int n_max = 0;
  int ell_max = 0;
  std::size_t size = 0;
  double beta = 0.0;
  std::vector<LevelRow> rows;            // sorted by (n, ell)
  std::map<int, int> degeneracy;         // n -> sum of (2 ell + 1) over detected ell
  std::vector<AbsenceRow> absences;
  bool all_found() const;
  bool all_absent() const;
  /// degeneracy[n] == n^2 for every n whose ell range 0..n-1 was scanned.
  bool degeneracy_ok() const;
};

/// Bound-state levels and degeneracies for n <= n_max and ell <= ell_max
/// (default n_max - 1). Pencils for distinct ell run in parallel.
SpectrumReport degeneracy_table(double kappa, int n_max, std::size_t size, std::optional<double> beta = {},
                                std::optional<int> ell_max = {});
SpectrumReport degeneracy_table_serial(double kappa, int n_max, std::size_t size, std::optional<double> beta = {},
                                       std::optional<int> ell_max = {});

struct LowerConeResult {
  std::vector<double> negative;  // eigenvalues below -1e-10
  double min_positive = 0.0;
  std::vector<double> lambdas;
};
/// Bound states of the lower-cone pencil (kappa -> -kappa). beta defaults to kappa.
LowerConeResult lower_cone_bound_states(double kappa, int ell, std::size_t size, std::optional<double> beta = {});

/// Eigenvalues of i(F - E) = -t d^2 - 2d + l(l+1)/t + t in the basis, ascending.
std::vector<double> compact_spectrum(int ell, std::size_t size, double beta = 1.0);

struct AdjointCheck {
  double residual = 0.0;
  double deviation_e = 0.0;
  double deviation_h = 0.0;
  double deviation_f = 0.0;
  std::size_t pairs = 0;
  double max_deviation() const;
};
/// (i) |S_kappa(-kappa^2/4n^2) psi| / |psi| for the closed-form eigenfunction
/// psi_{n,l}; (ii) |<rho(d) phi_i, phi_j> - <phi_i, rho(d*) phi_j>| over 20 basis
/// pairs for d in {e, h, f}, with d* from the symbolic star. Requires n > ell.
AdjointCheck residual_and_adjoint_check(int n, int ell, double kappa);

}  // namespace conequant
