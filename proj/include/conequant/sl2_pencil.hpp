#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace conequant {

using Mat2 = std::array<std::array<std::complex<double>, 2>, 2>;

Mat2 mat2_e();
Mat2 mat2_h();
Mat2 mat2_f();
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(std::complex<double> c, const Mat2& a);
std::complex<double> det(const Mat2& a);
std::complex<double> trace(const Mat2& a);
/// Throws std::domain_error for a singular matrix.
Mat2 inverse(const Mat2& a);
double max_abs(const Mat2& a);

/// X_lambda = lambda E + F.
Mat2 schrodinger_matrix(double lambda);

enum class ConjugacyKind { elliptic, nilpotent, hyperbolic };
std::string to_string(ConjugacyKind k);

struct Conjugation {
  ConjugacyKind kind;
  double nu = 0.0;  // sqrt|lambda|; 0 in the nilpotent case
  Mat2 a;           // A in SL2(R)
  Mat2 normal_form; // nu(F - E), -E or nu H
  double error = 0.0;  // |A X A^{-1} - normal_form|_max
};

/// Explicit A with A X_lambda A^{-1} = nu(F-E) (lambda < 0), -E (lambda = 0),
/// nu H (lambda > 0). Throws std::logic_error if the verification fails.
Conjugation classify_and_conjugate(double lambda);

struct MonodromyResult {
  std::complex<double> lambda;
  std::complex<double> integral;  // int_0^{2 pi} d theta / (cos^2 - lambda sin^2)
  std::complex<double> m;         // exp(-i I)
  double modulus = 0.0;           // exp(Im(lambda) int sin^2 / |c|^2)
  std::size_t panels = 0;
  bool converged = false;
};

/// Composite 32-point Gauss-Legendre, starting from one panel per quarter
/// period and doubling until consecutive values agree to rel_tol. Throws
/// std::domain_error for real lambda >= 0.
MonodromyResult monodromy(std::complex<double> lambda, double rel_tol = 1e-12);

/// 2 pi / sqrt(-lambda) on the principal branch.
std::complex<double> monodromy_closed_form(std::complex<double> lambda);

struct ScanPoint {
  double lambda;
  double deviation;  // |M - 1|
};

/// Grid a + j step for j = 0.. while <= b (computed without accumulation).
std::vector<double> scan_grid(double a, double b, double step);
/// Monodromy deviation |M - 1| over the grid; OpenMP over grid points.
std::vector<ScanPoint> monodromy_scan(double a, double b, double step);
std::vector<ScanPoint> monodromy_scan_serial(double a, double b, double step);

/// {-kappa^2/m^2 : 1 <= m <= m_max}, ordered by m.
std::vector<double> candidate_spectrum(double kappa, int m_max);

struct ScanVerdict {
  std::size_t grid_points = 0;
  std::vector<double> hits;          // grid points with |M - 1| < threshold
  std::vector<double> stray_hits;    // hits farther than radius from every candidate
  std::vector<double> candidates_in_range;
  std::vector<double> candidates_without_unit_monodromy;  // |M(candidate) - 1| >= threshold
  std::vector<double> candidates_on_grid;  // candidates that coincide with a grid point
  std::vector<double> missed_on_grid;      // such candidates whose grid point is not a hit
  bool ok() const {
    return stray_hits.empty() && candidates_without_unit_monodromy.empty() && missed_on_grid.empty();
  }
};
/// Every grid hit lies within radius of some -kappa^2/m^2, and M = 1 at each
/// candidate inside [a, b].
ScanVerdict check_scan(const std::vector<ScanPoint>& scan, double kappa, double a, double b,
                       double threshold = 1e-6, double radius = 2e-3);

}  // namespace conequant
