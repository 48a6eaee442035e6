#include "conequant/sl2_pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conequant/quadrature.hpp"

namespace conequant {

using cd = std::complex<double>;

Mat2 mat2_e() { return {{{0.0, 1.0}, {0.0, 0.0}}}; }
Mat2 mat2_h() { return {{{1.0, 0.0}, {0.0, -1.0}}}; }
Mat2 mat2_f() { return {{{0.0, 0.0}, {1.0, 0.0}}}; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][j] + b[i][j];
  return c;
}

Mat2 operator-(const Mat2& a, const Mat2& b) { return a + cd(-1.0) * b; }

Mat2 operator*(cd c, const Mat2& a) {
  Mat2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = c * a[i][j];
  return out;
}

cd det(const Mat2& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
cd trace(const Mat2& a) { return a[0][0] + a[1][1]; }

Mat2 inverse(const Mat2& a) {
  const cd d = det(a);
  if (std::abs(d) == 0.0) throw std::domain_error("inverse: singular 2x2 matrix");
  return {{{a[1][1] / d, -a[0][1] / d}, {-a[1][0] / d, a[0][0] / d}}};
}

double max_abs(const Mat2& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (const auto& x : row) m = std::max(m, std::abs(x));
  return m;
}

Mat2 schrodinger_matrix(double lambda) { return cd(lambda) * mat2_e() + mat2_f(); }

std::string to_string(ConjugacyKind k) {
  switch (k) {
    case ConjugacyKind::elliptic: return "elliptic";
    case ConjugacyKind::nilpotent: return "nilpotent";
    case ConjugacyKind::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

Conjugation classify_and_conjugate(double lambda) {
  if (!std::isfinite(lambda)) throw std::invalid_argument("classify_and_conjugate: lambda must be finite");
  Conjugation c;
  const Mat2 x = schrodinger_matrix(lambda);
  if (lambda < 0.0) {
    c.kind = ConjugacyKind::elliptic;
    c.nu = std::sqrt(-lambda);
    const double s = std::sqrt(c.nu);
    c.a = {{{1.0 / s, 0.0}, {0.0, s}}};
    c.normal_form = cd(c.nu) * (mat2_f() - mat2_e());
  } else if (lambda == 0.0) {
    c.kind = ConjugacyKind::nilpotent;
    c.a = {{{0.0, 1.0}, {-1.0, 0.0}}};
    c.normal_form = cd(-1.0) * mat2_e();
  } else {
    c.kind = ConjugacyKind::hyperbolic;
    c.nu = std::sqrt(lambda);
    // Columns of P are eigenvectors of X for nu and -nu; A = P^{-1} diagonalizes.
    const double r = std::sqrt(2.0 * c.nu);
    const Mat2 p = {{{c.nu / r, -c.nu / r}, {1.0 / r, 1.0 / r}}};
    c.a = inverse(p);
    c.normal_form = cd(c.nu) * mat2_h();
  }
  c.error = max_abs(c.a * x * inverse(c.a) - c.normal_form);
  const double scale = std::max(1.0, std::abs(lambda));
  if (std::abs(det(c.a) - 1.0) > 1e-12 || c.error > 1e-12 * scale)
    throw std::logic_error("classify_and_conjugate: conjugator verification failed");
  return c;
}

std::complex<double> monodromy_closed_form(std::complex<double> lambda) {
  return 2.0 * std::numbers::pi / std::sqrt(-lambda);
}

namespace {

void require_admissible(cd lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw std::invalid_argument("monodromy: lambda must be finite");
  if (lambda.imag() == 0.0 && lambda.real() >= 0.0)
    throw std::domain_error("monodromy: lambda in [0, inf) makes cos^2 - lambda sin^2 vanish on the circle");
}

struct Integrals {
  cd inverse_c;
  double sin2_over_abs2;
};

Integrals integrate(cd lambda, const QuadratureRule& gl, std::size_t panels) {
  const double width = 2.0 * std::numbers::pi / static_cast<double>(panels);
  cd sum_inv = 0.0;
  double sum_sin = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * width;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double theta = mid + 0.5 * width * gl.nodes[k];
      const double s = std::sin(theta);
      const double co = std::cos(theta);
      const cd c = co * co - lambda * s * s;
      const double w = 0.5 * width * gl.weights[k];
      sum_inv += w / c;
      sum_sin += w * s * s / std::norm(c);
    }
  }
  return {sum_inv, sum_sin};
}

}  // namespace

MonodromyResult monodromy(std::complex<double> lambda, double rel_tol) {
  require_admissible(lambda);
  static const QuadratureRule gl = gauss_legendre(32);
  MonodromyResult r;
  r.lambda = lambda;
  std::size_t panels = 4;
  Integrals prev = integrate(lambda, gl, panels);
  constexpr std::size_t max_panels = std::size_t{1} << 20;
  while (panels < max_panels) {
    panels *= 2;
    const Integrals cur = integrate(lambda, gl, panels);
    const bool done = std::abs(cur.inverse_c - prev.inverse_c) <= rel_tol * std::abs(cur.inverse_c) &&
                      std::abs(cur.sin2_over_abs2 - prev.sin2_over_abs2) <= rel_tol * cur.sin2_over_abs2;
    prev = cur;
    if (done) {
      r.converged = true;
      break;
    }
  }
  r.panels = panels;
  r.integral = prev.inverse_c;
  r.m = std::exp(cd(0.0, -1.0) * r.integral);
  r.modulus = std::exp(lambda.imag() * prev.sin2_over_abs2);
  return r;
}

std::vector<double> scan_grid(double a, double b, double step) {
  if (!(step > 0.0) || !(a <= b)) throw std::invalid_argument("scan_grid: need a <= b and step > 0");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  for (std::size_t j = 0; j < count; ++j) out.push_back(a + static_cast<double>(j) * step);
  return out;
}

namespace {

std::vector<ScanPoint> scan_impl(double a, double b, double step, bool parallel) {
  const std::vector<double> grid = scan_grid(a, b, step);
  if (grid.back() >= 0.0) throw std::domain_error("monodromy_scan: grid must stay below 0");
  std::vector<ScanPoint> out(grid.size());
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(grid.size()); ++j) {
    const MonodromyResult m = monodromy(grid[j]);
    out[j] = {grid[j], std::abs(m.m - 1.0)};
  }
  return out;
}

}  // namespace

std::vector<ScanPoint> monodromy_scan(double a, double b, double step) { return scan_impl(a, b, step, true); }

std::vector<ScanPoint> monodromy_scan_serial(double a, double b, double step) { return scan_impl(a, b, step, false); }

std::vector<double> candidate_spectrum(double kappa, int m_max) {
  if (!(kappa > 0.0)) throw std::invalid_argument("candidate_spectrum: kappa must be positive");
  std::vector<double> out;
  for (int m = 1; m <= m_max; ++m) out.push_back(-kappa * kappa / (static_cast<double>(m) * m));
  return out;
}

ScanVerdict check_scan(const std::vector<ScanPoint>& scan, double kappa, double a, double b, double threshold,
                       double radius) {
  ScanVerdict v;
  v.grid_points = scan.size();
  // Candidates below b down to the grid start; the m range covers every candidate above a.
  const int m_max = static_cast<int>(std::ceil(kappa / std::sqrt(std::max(-b, 1e-300)))) + 1;
  const std::vector<double> all = candidate_spectrum(kappa, m_max);
  for (double c : all)
    if (c >= a && c <= b) v.candidates_in_range.push_back(c);
  for (const auto& p : scan) {
    if (p.deviation >= threshold) continue;
    v.hits.push_back(p.lambda);
    const bool near = std::any_of(all.begin(), all.end(), [&](double c) { return std::abs(p.lambda - c) <= radius; });
    if (!near) v.stray_hits.push_back(p.lambda);
  }
  for (double c : v.candidates_in_range) {
    if (std::abs(monodromy(c).m - 1.0) >= threshold) v.candidates_without_unit_monodromy.push_back(c);
    for (const auto& p : scan) {
      if (std::abs(p.lambda - c) > 1e-9) continue;
      v.candidates_on_grid.push_back(c);
      if (p.deviation >= threshold) v.missed_on_grid.push_back(c);
      break;
    }
  }
  return v;
}

}  // namespace conequant
