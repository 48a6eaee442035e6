#include "conequant/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>

#include "conequant/quadrature.hpp"

namespace conequant {

namespace {

using cdouble = std::complex<double>;

// Quadrature in t for integrals against t dt / 2, built from a Gauss-Laguerre
// rule in x = beta t for the weight x^alpha e^{-x}.
struct HalfLineRule {
  std::vector<double> t;
  std::vector<double> w;
};

HalfLineRule half_line_rule(std::size_t nodes, double alpha, double beta) {
  const QuadratureRule q = gauss_laguerre(nodes, alpha);
  HalfLineRule r;
  r.t.resize(nodes);
  r.w.resize(nodes);
  for (std::size_t m = 0; m < nodes; ++m) {
    r.t[m] = q.nodes[m] / beta;
    r.w[m] = 0.5 * q.weights[m] * q.nodes[m] / (beta * beta);
  }
  return r;
}

// Radial operator with coefficients converted to floating point once.
struct NumericOperator {
  struct Term {
    int order;
    int power;
    cdouble coeff;
  };
  std::vector<Term> terms;
  int max_order = 0;

  explicit NumericOperator(const RadialOperator& op) {
    for (const auto& [j, c] : op.terms())
      for (const auto& [e, v] : c.terms()) {
        terms.push_back({j, e, v.to_complex()});
        max_order = std::max(max_order, j);
      }
    if (max_order > 2) throw std::invalid_argument("NumericOperator: order above 2 is not supported");
  }

  cdouble apply(double t, const double* derivs) const {
    cdouble s = 0.0;
    for (const auto& term : terms) s += term.coeff * std::pow(t, term.power) * derivs[term.order];
    return s;
  }
};

Scalar exact(double x) { return Scalar(mpq_class(x)); }

}  // namespace

RadialBasis build_basis(int ell, std::size_t size, double beta) {
  if (ell < 0) throw std::invalid_argument("build_basis: ell must be nonnegative");
  if (size < 1) throw std::invalid_argument("build_basis: size must be at least 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("build_basis: beta must be positive");
  return {ell, size, beta};
}

void evaluate_basis(const RadialBasis& basis, double t, double* values, double* d1, double* d2) {
  const double beta = basis.beta;
  const double x = beta * t;
  const double ell = basis.ell;
  const std::size_t n = basis.size;
  std::vector<double> l(n);
  std::vector<double> l1(n);
  std::vector<double> l2(n);
  const double log_factor = std::log(std::sqrt(2.0) * beta) + ell * std::log(x) - 0.5 * x;
  orthonormal_laguerre(x, 2.0 * ell + 1.0, n, log_factor, l.data(), l1.data(), l2.data());
  const double s = ell / x - 0.5;
  const double s2 = s * s - ell / (x * x);
  for (std::size_t k = 0; k < n; ++k) {
    if (values) values[k] = l[k];
    if (d1) d1[k] = beta * (l1[k] + s * l[k]);
    if (d2) d2[k] = beta * beta * (l2[k] + 2.0 * s * l1[k] + s2 * l[k]);
  }
}

namespace {

struct Samples {
  Eigen::MatrixXd value;  // nodes x basis
  Eigen::MatrixXd op;     // (t d^2 + 2d - l(l+1)/t + kappa) phi
  HalfLineRule rule;
};

Samples sample_basis(const RadialBasis& basis, double kappa, bool parallel) {
  const std::size_t n = basis.size;
  const std::size_t m = n + static_cast<std::size_t>(basis.ell) + 6;
  Samples s;
  s.rule = half_line_rule(m, 2.0 * basis.ell, basis.beta);
  s.value.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  s.op.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  const double casimir = static_cast<double>(basis.ell) * (basis.ell + 1);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t node = 0; node < static_cast<std::ptrdiff_t>(m); ++node) {
    std::vector<double> v(n);
    std::vector<double> d1(n);
    std::vector<double> d2(n);
    const double t = s.rule.t[node];
    evaluate_basis(basis, t, v.data(), d1.data(), d2.data());
    for (std::size_t k = 0; k < n; ++k) {
      s.value(node, static_cast<Eigen::Index>(k)) = v[k];
      s.op(node, static_cast<Eigen::Index>(k)) = t * d2[k] + 2.0 * d1[k] - casimir / t * v[k] + kappa * v[k];
    }
  }
  return s;
}

// out_ij = sum_m w_m left_mi right_mj, with a fixed summation order per entry.
Eigen::MatrixXd weighted_product(const Eigen::MatrixXd& left, const Eigen::MatrixXd& right,
                                 const std::vector<double>& w, bool parallel) {
  const Eigen::Index n = left.cols();
  const Eigen::Index m = left.rows();
  Eigen::MatrixXd out(n, right.cols());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < right.cols(); ++j) {
      double sum = 0.0;
      for (Eigen::Index k = 0; k < m; ++k) sum += w[static_cast<std::size_t>(k)] * left(k, i) * right(k, j);
      out(i, j) = sum;
    }
  return out;
}

Pencil assemble(const RadialBasis& basis, double kappa, bool parallel) {
  const Samples s = sample_basis(basis, kappa, parallel);
  std::vector<double> wt(s.rule.w.size());
  for (std::size_t k = 0; k < wt.size(); ++k) wt[k] = s.rule.w[k] * s.rule.t[k];
  Pencil p;
  p.basis = basis;
  p.kappa = kappa;
  p.a = weighted_product(s.value, s.op, s.rule.w, parallel);
  p.b = weighted_product(s.value, s.value, wt, parallel);
  p.asymmetry = (p.a - p.a.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, p.a.cwiseAbs().maxCoeff());
  if (!(p.asymmetry < 1e-10 * scale))
    throw SpectralError("assemble_pencil: operator matrix asymmetry " + std::to_string(p.asymmetry) +
                        " exceeds tolerance");
  p.a = 0.5 * (p.a + p.a.transpose()).eval();
  p.b = 0.5 * (p.b + p.b.transpose()).eval();
  return p;
}

}  // namespace

Eigen::MatrixXd gram_matrix(const RadialBasis& basis) {
  const Samples s = sample_basis(basis, 0.0, false);
  return weighted_product(s.value, s.value, s.rule.w, false);
}

Pencil assemble_pencil(const RadialBasis& basis, double kappa) { return assemble(basis, kappa, true); }

Pencil assemble_pencil_serial(const RadialBasis& basis, double kappa) { return assemble(basis, kappa, false); }

std::vector<Eigenpair> pencil_eigenpairs(const Pencil& pencil) {
  Eigen::LLT<Eigen::MatrixXd> llt(pencil.b);
  if (llt.info() != Eigen::Success) throw SpectralError("pencil: B is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(pencil.a, pencil.b,
                                                                     Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw SpectralError("pencil: generalized eigensolve failed");
  std::vector<Eigenpair> out;
  const Eigen::Index n = pencil.a.rows();
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    const double mu = solver.eigenvalues()[k];
    const Eigen::VectorXd psi = solver.eigenvectors().col(k);
    const Eigen::VectorXd bpsi = pencil.b * psi;
    const double residual = (pencil.a * psi - mu * bpsi).norm() / bpsi.norm();
    out.push_back({-mu, residual});
  }
  return out;
}

std::vector<double> pencil_lambdas(const Pencil& pencil) {
  std::vector<double> out;
  for (const auto& e : pencil_eigenpairs(pencil)) out.push_back(e.lambda);
  return out;
}

std::vector<double> bound_states(const Pencil& pencil, std::size_t count) {
  std::vector<double> out;
  for (double l : pencil_lambdas(pencil)) {
    if (l >= 0.0) break;
    out.push_back(l);
    if (count != 0 && out.size() == count) break;
  }
  return out;
}

double effective_kappa(double kappa, Cone cone) {
  const RadialOperator op = isotypic_restrict(schrodinger_combination(exact(kappa), Scalar(0)), {0, cone});
  // normalized so that the t d^2 coefficient is 1, as in the upper-cone pencil
  const double lead = op.coefficient(2).coefficient(1).to_complex().real();
  return op.coefficient(0).coefficient(0).to_complex().real() / lead;
}

double level_tolerance(int n) {
  if (n <= 3) return 1e-8;
  if (n <= 6) return 1e-3;
  return 1e-2;
}

bool SpectrumReport::all_found() const {
  return std::all_of(rows.begin(), rows.end(), [](const LevelRow& r) { return r.found; });
}

bool SpectrumReport::all_absent() const {
  return std::all_of(absences.begin(), absences.end(), [](const AbsenceRow& r) { return r.absent; });
}

bool SpectrumReport::degeneracy_ok() const {
  for (const auto& [n, total] : degeneracy)
    if (ell_max >= n - 1 && total != n * n) return false;
  return true;
}

namespace {

struct EllResult {
  std::vector<LevelRow> rows;
  std::vector<AbsenceRow> absences;
};

EllResult scan_ell(double kappa, int n_max, std::size_t size, double beta, int ell) {
  const Pencil p = assemble_pencil_serial(build_basis(ell, size, beta), kappa);
  const auto pairs = pencil_eigenpairs(p);
  EllResult r;
  for (int n = 1; n <= n_max; ++n) {
    const double expected = -kappa * kappa / (4.0 * n * n);
    auto nearest = std::min_element(pairs.begin(), pairs.end(), [&](const Eigenpair& a, const Eigenpair& b) {
      return std::abs(a.lambda - expected) < std::abs(b.lambda - expected);
    });
    const double rel = std::abs(nearest->lambda - expected) / std::abs(expected);
    if (ell < n) {
      r.rows.push_back(
          {n, ell, nearest->lambda, expected, rel, nearest->residual, size, beta, rel < level_tolerance(n)});
    } else {
      r.absences.push_back({n, ell, rel, rel > 10.0 * level_tolerance(n)});
    }
  }
  return r;
}

SpectrumReport degeneracy_impl(double kappa, int n_max, std::size_t size, std::optional<double> beta_opt,
                               std::optional<int> ell_max_opt, bool parallel) {
  if (n_max < 1) throw std::invalid_argument("degeneracy_table: n_max must be at least 1");
  if (!(kappa > 0.0)) throw std::invalid_argument("degeneracy_table: kappa must be positive");
  SpectrumReport rep;
  rep.kappa = kappa;
  rep.n_max = n_max;
  rep.ell_max = ell_max_opt.value_or(n_max - 1);
  if (rep.ell_max < 0) throw std::invalid_argument("degeneracy_table: ell_max must be nonnegative");
  rep.size = size;
  rep.beta = beta_opt.value_or(kappa);
  build_basis(0, size, rep.beta);

  std::vector<EllResult> per_ell(static_cast<std::size_t>(rep.ell_max) + 1);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int ell = 0; ell <= rep.ell_max; ++ell) {
    try {
      per_ell[static_cast<std::size_t>(ell)] = scan_ell(kappa, n_max, size, rep.beta, ell);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& r : per_ell) {
    rep.rows.insert(rep.rows.end(), r.rows.begin(), r.rows.end());
    rep.absences.insert(rep.absences.end(), r.absences.begin(), r.absences.end());
  }
  auto key = [](const auto& a, const auto& b) { return std::pair(a.n, a.ell) < std::pair(b.n, b.ell); };
  std::sort(rep.rows.begin(), rep.rows.end(), key);
  std::sort(rep.absences.begin(), rep.absences.end(), key);
  for (int n = 1; n <= n_max; ++n) rep.degeneracy[n] = 0;
  for (const auto& row : rep.rows)
    if (row.found) rep.degeneracy[row.n] += 2 * row.ell + 1;
  return rep;
}

}  // namespace

SpectrumReport degeneracy_table(double kappa, int n_max, std::size_t size, std::optional<double> beta,
                                std::optional<int> ell_max) {
  return degeneracy_impl(kappa, n_max, size, beta, ell_max, true);
}

SpectrumReport degeneracy_table_serial(double kappa, int n_max, std::size_t size, std::optional<double> beta,
                                       std::optional<int> ell_max) {
  return degeneracy_impl(kappa, n_max, size, beta, ell_max, false);
}

LowerConeResult lower_cone_bound_states(double kappa, int ell, std::size_t size, std::optional<double> beta) {
  if (!(kappa > 0.0)) throw std::invalid_argument("lower_cone_bound_states: kappa must be positive");
  const Pencil p = assemble_pencil(build_basis(ell, size, beta.value_or(kappa)), effective_kappa(kappa, Cone::lower));
  LowerConeResult r;
  r.lambdas = pencil_lambdas(p);
  r.min_positive = std::numeric_limits<double>::quiet_NaN();
  for (double l : r.lambdas) {
    if (l < -1e-10) r.negative.push_back(l);
    if (l > 0.0 && !(l >= r.min_positive)) r.min_positive = l;
  }
  return r;
}

namespace {

// <phi_i, op phi_j> over the basis with the half-line weight.
Eigen::MatrixXcd operator_matrix(const RadialBasis& basis, const RadialOperator& op) {
  const NumericOperator nop(op);
  const std::size_t n = basis.size;
  const std::size_t m = n + static_cast<std::size_t>(basis.ell) + 6;
  const HalfLineRule rule = half_line_rule(m, 2.0 * basis.ell, basis.beta);
  Eigen::MatrixXd v(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  Eigen::MatrixXcd ov(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  std::vector<double> d0(n);
  std::vector<double> d1(n);
  std::vector<double> d2(n);
  for (std::size_t node = 0; node < m; ++node) {
    const double t = rule.t[node];
    evaluate_basis(basis, t, d0.data(), d1.data(), d2.data());
    for (std::size_t k = 0; k < n; ++k) {
      const double derivs[3] = {d0[k], d1[k], d2[k]};
      v(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(k)) = d0[k];
      ov(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(k)) = nop.apply(t, derivs);
    }
  }
  const Eigen::Map<const Eigen::VectorXd> w(rule.w.data(), static_cast<Eigen::Index>(m));
  return v.transpose() * w.asDiagonal() * ov;
}

}  // namespace

std::vector<double> compact_spectrum(int ell, std::size_t size, double beta) {
  const RadialBasis basis = build_basis(ell, size, beta);
  const Scalar zero(0);
  const Scalar i = Scalar::i();
  // i(F - E)
  const RadialOperator op = isotypic_restrict(Sl2Combination{zero, -i, zero, i}, {ell, Cone::upper});
  const Eigen::MatrixXcd c = operator_matrix(basis, op);
  if (c.imag().cwiseAbs().maxCoeff() > 1e-12) throw SpectralError("compact_spectrum: operator matrix is not real");
  const Eigen::MatrixXd re = c.real();
  const Eigen::MatrixXd sym = 0.5 * (re + re.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, gram_matrix(basis), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SpectralError("compact_spectrum: eigensolve failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double AdjointCheck::max_deviation() const { return std::max({deviation_e, deviation_h, deviation_f}); }

AdjointCheck residual_and_adjoint_check(int n, int ell, double kappa) {
  if (ell < 0 || n <= ell) throw std::invalid_argument("residual_and_adjoint_check: need n > ell >= 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("residual_and_adjoint_check: kappa must be positive");
  AdjointCheck out;
  const IsotypicParams params{ell, Cone::upper};

  // psi_{n,l} is, up to normalization, the top function of the basis with beta = kappa/n and n - l terms.
  {
    const Scalar k = exact(kappa);
    const Scalar lambda = -(k * k) / Scalar(4L * n * n);
    const NumericOperator s(isotypic_restrict(schrodinger_combination(k, lambda), params));
    const RadialBasis psi_basis = build_basis(ell, static_cast<std::size_t>(n - ell), kappa / n);
    const HalfLineRule rule =
        half_line_rule(static_cast<std::size_t>(n + ell + 8), ell == 0 ? 0.0 : 2.0 * ell - 1.0, psi_basis.beta);
    const std::size_t top = psi_basis.size - 1;
    std::vector<double> d0(psi_basis.size);
    std::vector<double> d1(psi_basis.size);
    std::vector<double> d2(psi_basis.size);
    double res2 = 0.0;
    double norm2 = 0.0;
    for (std::size_t m = 0; m < rule.t.size(); ++m) {
      evaluate_basis(psi_basis, rule.t[m], d0.data(), d1.data(), d2.data());
      const double derivs[3] = {d0[top], d1[top], d2[top]};
      res2 += rule.w[m] * std::norm(s.apply(rule.t[m], derivs));
      norm2 += rule.w[m] * d0[top] * d0[top];
    }
    out.residual = std::sqrt(res2 / norm2);
  }

  // Skewness of e, h, f against the star computed symbolically.
  const RadialBasis basis = build_basis(ell, 5, kappa);
  const HalfLineRule rule = half_line_rule(basis.size + static_cast<std::size_t>(ell) + 8, 2.0 * ell, basis.beta);
  const std::size_t m = rule.t.size();
  std::vector<std::array<double, 3>> samples(m * basis.size);
  {
    std::vector<double> d0(basis.size);
    std::vector<double> d1(basis.size);
    std::vector<double> d2(basis.size);
    for (std::size_t node = 0; node < m; ++node) {
      evaluate_basis(basis, rule.t[node], d0.data(), d1.data(), d2.data());
      for (std::size_t k = 0; k < basis.size; ++k) samples[node * basis.size + k] = {d0[k], d1[k], d2[k]};
    }
  }
  const Scalar zero(0);
  const Scalar one(1);
  const Sl2Combination generators[3] = {{zero, one, zero, zero}, {zero, zero, one, zero}, {zero, zero, zero, one}};
  double* deviations[3] = {&out.deviation_e, &out.deviation_h, &out.deviation_f};
  for (int g = 0; g < 3; ++g) {
    const NumericOperator op(isotypic_restrict(generators[g], params));
    const NumericOperator op_star(isotypic_restrict(star(generators[g]), params));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        cdouble lhs = 0.0;
        cdouble rhs = 0.0;
        for (std::size_t node = 0; node < m; ++node) {
          const auto& fi = samples[node * basis.size + i];
          const auto& fj = samples[node * basis.size + j];
          lhs += rule.w[node] * std::conj(op.apply(rule.t[node], fi.data())) * fj[0];
          rhs += rule.w[node] * fi[0] * op_star.apply(rule.t[node], fj.data());
        }
        *deviations[g] = std::max(*deviations[g], std::abs(lhs - rhs));
      }
  }
  out.pairs = 20;
  return out;
}

}  // namespace conequant
