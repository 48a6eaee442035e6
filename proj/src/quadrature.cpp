#include "conequant/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conequant {

QuadratureRule gauss_legendre(std::size_t m) {
  if (m == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(m) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[m - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  return rule;
}

void orthonormal_laguerre(double x, double alpha, std::size_t count, double log_factor, double* values,
                          double* first, double* second) {
  if (count == 0) return;
  constexpr double big = 1e150;
  const double log_big = std::log(big);
  std::vector<double> l(count);
  double scale = -0.5 * std::lgamma(alpha + 1.0);
  l[0] = 1.0;
  if (count > 1) l[1] = (alpha + 1.0 - x) / std::sqrt(alpha + 1.0);
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const double kk = static_cast<double>(k);
    const double a_k = std::sqrt((kk + 1.0) * (kk + alpha + 1.0));
    const double a_km1 = std::sqrt(kk * (kk + alpha));
    l[k + 1] = ((2.0 * kk + alpha + 1.0 - x) * l[k] - a_km1 * l[k - 1]) / a_k;
    if (std::abs(l[k + 1]) > big) {
      for (std::size_t j = 0; j <= k + 1; ++j) l[j] /= big;
      scale += log_big;
    }
  }
  const double factor = std::exp(scale + log_factor);
  for (std::size_t k = 0; k < count; ++k) {
    const double kk = static_cast<double>(k);
    const double v = l[k] * factor;
    const double prev = k == 0 ? 0.0 : l[k - 1] * factor;
    const double d1 = (kk * v - (k == 0 ? 0.0 : std::sqrt(kk * (kk + alpha)) * prev)) / x;
    if (values) values[k] = v;
    if (first) first[k] = d1;
    if (second) second[k] = ((x - alpha - 1.0) * d1 - kk * v) / x;
  }
}

QuadratureRule gauss_laguerre(std::size_t m, double alpha) {
  if (m == 0) throw std::invalid_argument("gauss_laguerre: need at least one node");
  if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre: alpha must exceed -1");
  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(m > 1 ? m - 1 : 0);
  for (std::size_t k = 0; k < m; ++k) diag[k] = 2.0 * k + alpha + 1.0;
  for (std::size_t k = 0; k + 1 < m; ++k) off[k] = std::sqrt((k + 1.0) * (k + alpha + 1.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_laguerre: tridiagonal eigensolve failed");

  QuadratureRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  std::vector<double> v(m + 1);
  std::vector<double> d(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    for (int iter = 0; iter < 8; ++iter) {
      // Only the ratio l_m / l_m' matters; the factor keeps both in range.
      orthonormal_laguerre(x, alpha, m + 1, 0.5 * alpha * std::log(x) - 0.5 * x, v.data(), d.data(), nullptr);
      const double dx = v[m] / d[m];
      x -= dx;
      if (std::abs(dx) < 1e-15 * std::max(1.0, x)) break;
    }
    // Christoffel weight for the orthonormal functions x^{alpha/2} e^{-x/2} l_k.
    const double log_factor = 0.5 * alpha * std::log(x) - 0.5 * x;
    orthonormal_laguerre(x, alpha, m, log_factor, v.data(), nullptr, nullptr);
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += v[k] * v[k];
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / sum;
  }
  return rule;
}

}  // namespace conequant
