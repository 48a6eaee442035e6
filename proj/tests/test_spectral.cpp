#include <cmath>
#include <numeric>

#include "conequant/quadrature.hpp"
#include "conequant/radial.hpp"
#include "conequant/spectral.hpp"
#include "doctest.h"

using namespace conequant;

namespace {

double level(double kappa, int n) { return -kappa * kappa / (4.0 * n * n); }

double nearest(const std::vector<double>& xs, double target) {
  double best = xs.front();
  for (double x : xs)
    if (std::abs(x - target) < std::abs(best - target)) best = x;
  return best;
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const QuadratureRule r = gauss_legendre(8);
  double sum_w = 0.0;
  double x14 = 0.0;
  for (std::size_t k = 0; k < r.nodes.size(); ++k) {
    sum_w += r.weights[k];
    x14 += r.weights[k] * std::pow(r.nodes[k], 14);
  }
  CHECK(sum_w == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("Gauss-Laguerre reproduces Gamma moments") {
  for (double alpha : {0.0, 1.0, 3.0, 7.0}) {
    const QuadratureRule r = gauss_laguerre(30, alpha);
    for (int m : {0, 1, 5, 20}) {
      double sum = 0.0;
      for (std::size_t k = 0; k < r.nodes.size(); ++k)
        sum += r.weights[k] * std::pow(r.nodes[k], alpha + m) * std::exp(-r.nodes[k]);
      const double exact = std::tgamma(alpha + m + 1);
      CHECK(sum / exact == doctest::Approx(1.0).epsilon(1e-11));
    }
  }
  CHECK_THROWS_AS(gauss_laguerre(5, -1.0), std::invalid_argument);
}

TEST_CASE("basis is orthonormal") {
  CHECK((gram_matrix(build_basis(0, 3, 1.0)) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((gram_matrix(build_basis(1, 50, 1.0)) - Eigen::MatrixXd::Identity(50, 50)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((gram_matrix(build_basis(4, 80, 0.7)) - Eigen::MatrixXd::Identity(80, 80)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(build_basis(0, 10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(-1, 10, 1.0), std::invalid_argument);
}

TEST_CASE("basis derivatives match finite differences") {
  const RadialBasis b = build_basis(2, 6, 1.3);
  std::vector<double> v(6), d1(6), d2(6), vp(6), vm(6), scratch1(6), scratch2(6);
  const double t = 2.1;
  const double h = 1e-5;
  evaluate_basis(b, t, v.data(), d1.data(), d2.data());
  evaluate_basis(b, t + h, vp.data(), scratch1.data(), scratch2.data());
  evaluate_basis(b, t - h, vm.data(), scratch1.data(), scratch2.data());
  for (int k = 0; k < 6; ++k) {
    CHECK(d1[k] == doctest::Approx((vp[k] - vm[k]) / (2 * h)).epsilon(1e-7));
    CHECK(d2[k] == doctest::Approx((vp[k] - 2 * v[k] + vm[k]) / (h * h)).epsilon(1e-4));
  }
}

TEST_CASE("pencil matrices match the Laguerre recurrence oracle") {
  for (int ell : {0, 1, 3}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      const double kappa = 1.5;
      const Pencil p = assemble_pencil(build_basis(ell, 40, beta), kappa);
      const Eigen::Index n = p.a.rows();
      Eigen::MatrixXd a0 = (beta * beta / 4.0) * p.b;
      for (Eigen::Index k = 0; k < n; ++k) a0(k, k) += -beta * (static_cast<double>(k) + ell + 1) + kappa;
      CHECK((p.a - a0).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, p.a.cwiseAbs().maxCoeff()));
      CHECK((p.a - p.a.transpose()).cwiseAbs().maxCoeff() == 0.0);
      CHECK(p.asymmetry < 1e-9);
      Eigen::LLT<Eigen::MatrixXd> llt(p.b);
      CHECK(llt.info() == Eigen::Success);
      // B is tridiagonal: <phi_j, t phi_k> vanishes for |j - k| > 1
      CHECK(std::abs(p.b(0, 5)) < 1e-10);
    }
  }
}

TEST_CASE("parallel and serial assembly agree") {
  const RadialBasis b = build_basis(2, 60, 1.0);
  const Pencil par = assemble_pencil(b, 1.0);
  const Pencil ser = assemble_pencil_serial(b, 1.0);
  CHECK(par.a == ser.a);
  CHECK(par.b == ser.b);
  const SpectrumReport r1 = degeneracy_table(1.0, 3, 60);
  const SpectrumReport r2 = degeneracy_table_serial(1.0, 3, 60);
  REQUIRE(r1.rows.size() == r2.rows.size());
  for (std::size_t k = 0; k < r1.rows.size(); ++k) CHECK(r1.rows[k].lambda == r2.rows[k].lambda);
  CHECK(r1.degeneracy == r2.degeneracy);
}

TEST_CASE("hydrogen bound states") {
  const Pencil p0 = assemble_pencil(build_basis(0, 200, 1.0), 1.0);
  const auto b0 = bound_states(p0);
  REQUIRE(!b0.empty());
  CHECK(std::abs(b0.front() - level(1, 1)) / 0.25 < 1e-8);

  const Pencil p1 = assemble_pencil(build_basis(1, 200, 1.0), 1.0);
  const auto b1 = bound_states(p1);
  REQUIRE(!b1.empty());
  CHECK(std::abs(b1.front() - level(1, 2)) / (1.0 / 16) < 1e-8);

  for (const auto& e : pencil_eigenpairs(p1)) {
    CHECK(std::isfinite(e.residual));
    CHECK(e.residual < 1e-8);
  }
  const auto lambdas = pencil_lambdas(p1);
  CHECK(std::is_sorted(lambdas.begin(), lambdas.end()));
}

TEST_CASE("degeneracy table") {
  const SpectrumReport r = degeneracy_table(1.0, 5, 200, 1.0, 6);
  CHECK(r.all_found());
  CHECK(r.all_absent());
  CHECK(r.degeneracy_ok());
  CHECK(r.degeneracy.at(1) == 1);
  CHECK(r.degeneracy.at(3) == 9);
  for (const auto& [n, d] : r.degeneracy) CHECK(d == n * n);
  for (const auto& row : r.rows) {
    CHECK(row.rel_err < level_tolerance(row.n));
    CHECK(row.ell < row.n);
  }
  CHECK(level_tolerance(3) == 1e-8);
  CHECK(level_tolerance(6) == 1e-3);
}

TEST_CASE("scale covariance in kappa") {
  const auto b1 = bound_states(assemble_pencil(build_basis(1, 200, 1.0), 1.0), 4);
  const auto b2 = bound_states(assemble_pencil(build_basis(1, 200, 2.0), 2.0), 4);
  REQUIRE(b1.size() == 4);
  REQUIRE(b2.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(b2[k] / 4.0 - b1[k]) / std::abs(b1[k]) < 1e-6);
}

TEST_CASE("basis-scale independence") {
  const double kappa = 1.0;
  std::vector<std::vector<double>> sets;
  for (double beta : {kappa / 2, kappa, 2 * kappa}) sets.push_back(bound_states(assemble_pencil(build_basis(0, 200, beta), kappa), 3));
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(sets[0][k] - sets[1][k]) / std::abs(sets[1][k]) < 1e-7);
    CHECK(std::abs(sets[2][k] - sets[1][k]) / std::abs(sets[1][k]) < 1e-7);
  }
}

TEST_CASE("convergence in the basis size") {
  for (int ell : {0, 1}) {
    for (int n : {3, 5}) {
      double previous = 1e300;
      for (std::size_t size : {50u, 100u, 200u, 400u}) {
        const auto lambdas = pencil_lambdas(assemble_pencil(build_basis(ell, size, 1.0), 1.0));
        const double err = std::abs(nearest(lambdas, level(1, n)) - level(1, n));
        // plateaus at rounding level are allowed
        CHECK(err <= std::max(previous, 1e-12));
        previous = err;
      }
    }
  }
}

TEST_CASE("lower cone has no bound states") {
  for (int ell : {0, 2}) {
    const LowerConeResult r = lower_cone_bound_states(1.0, ell, 200);
    CHECK(r.negative.empty());
    CHECK(r.min_positive > 0.0);
  }
  CHECK(effective_kappa(1.5, Cone::lower) == -1.5);
  CHECK(effective_kappa(1.5, Cone::upper) == 1.5);
  double previous = 1e300;
  for (std::size_t size : {100u, 200u, 400u}) {
    const LowerConeResult r = lower_cone_bound_states(1.0, 1, size);
    CHECK(r.min_positive < previous);
    previous = r.min_positive;
  }
}

TEST_CASE("compact generator spectrum") {
  for (int ell : {0, 1, 2}) {
    const auto s = compact_spectrum(ell, 60);
    REQUIRE(s.size() >= 10);
    for (int k = 0; k < 10; ++k) CHECK(std::abs(s[k] - 2.0 * (k + ell + 1)) < 1e-8);
  }
  const auto s1 = compact_spectrum(0, 60, 1.0);
  const auto s2 = compact_spectrum(0, 60, 2.0);
  for (int k = 0; k < 10; ++k) CHECK(std::abs(s1[k] - s2[k]) < 1e-8);
}

TEST_CASE("eigenfunction residuals and generator skewness") {
  for (auto [n, ell] : std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {2, 1}, {3, 1}}) {
    const AdjointCheck c = residual_and_adjoint_check(n, ell, 1.0);
    CHECK(c.residual < 1e-8);
    CHECK(c.pairs == 20);
    CHECK(c.max_deviation() < 1e-9);
  }
  CHECK_THROWS_AS(residual_and_adjoint_check(1, 1, 1.0), std::invalid_argument);
}
