#include "conequant/weyl.hpp"

#include <stdexcept>

namespace conequant {

QuadraticForm::QuadraticForm(ExactMatrix gram) : gram_(std::move(gram)) {
  const std::size_t n = gram_.rows();
  if (n == 0 || gram_.cols() != n) throw std::invalid_argument("QuadraticForm: Gram matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("QuadraticForm: Gram matrix not symmetric");
  if (determinant(gram_).is_zero()) throw std::domain_error("QuadraticForm: degenerate form");
  inverse_ = inverse(gram_);
  q_ = Polynomial(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MultiIndex e(n, 0);
      ++e[i];
      ++e[j];
      q_.add_term(e, gram_(i, j));
    }
}

QuadraticForm QuadraticForm::standard_lorentzian(std::size_t n) {
  ExactMatrix b = ExactMatrix::identity(n);
  b(n - 1, n - 1) = Scalar(-1);
  return QuadraticForm(b);
}

Scalar QuadraticForm::bilinear(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const {
  const auto bv = gram_.apply(v);
  Scalar s;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * bv[i];
  return s;
}

bool QuadraticForm::is_real() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (!gram_(i, j).is_real()) return false;
  return true;
}

WeylElement::WeylElement(const Polynomial& p) : n_(p.nvars()) {
  add_term(MultiIndex(n_, 0), p);
}

WeylElement WeylElement::constant(std::size_t nvars, const Scalar& c) {
  return WeylElement(Polynomial::constant(nvars, c));
}

WeylElement WeylElement::z(std::size_t nvars, std::size_t index) {
  return WeylElement(Polynomial::variable(nvars, index));
}

WeylElement WeylElement::d(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("WeylElement::d: index out of range");
  MultiIndex a(nvars, 0);
  a[index] = 1;
  return term(Polynomial::constant(nvars, Scalar(1)), a);
}

WeylElement WeylElement::directional(const std::vector<Scalar>& v) {
  WeylElement out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    MultiIndex a(v.size(), 0);
    a[i] = 1;
    out.add_term(a, Polynomial::constant(v.size(), v[i]));
  }
  return out;
}

WeylElement WeylElement::term(const Polynomial& coeff, const MultiIndex& alpha) {
  WeylElement out(coeff.nvars());
  out.add_term(alpha, coeff);
  return out;
}

int WeylElement::order() const {
  int k = -1;
  for (const auto& [alpha, p] : terms_) k = std::max(k, total_degree(alpha));
  return k;
}

Polynomial WeylElement::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Polynomial(n_) : it->second;
}

void WeylElement::add_term(const MultiIndex& alpha, const Polynomial& coeff) {
  check_same_dimension(alpha.size(), n_, "WeylElement::add_term");
  check_same_dimension(coeff.nvars(), n_, "WeylElement::add_term");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  check_same_dimension(n_, o.n_, "WeylElement::+");
  for (const auto& [a, p] : o.terms_) add_term(a, p);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  check_same_dimension(n_, o.n_, "WeylElement::-");
  for (const auto& [a, p] : o.terms_) add_term(a, -p);
  return *this;
}

WeylElement& WeylElement::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, p] : terms_) p *= c;
  return *this;
}

WeylElement WeylElement::linear_change(const ExactMatrix& a) const {
  const auto a_rows = a.to_rows();
  const auto dual_rows = inverse(a).transpose().to_rows();
  WeylElement out(n_);
  for (const auto& [alpha, p] : terms_) {
    // The derivative part is a commutative polynomial in d_1..d_n, so it can be
    // expanded with the ordinary polynomial substitution.
    const Polynomial dpart = Polynomial::monomial(alpha).linear_substitute(dual_rows);
    const Polynomial coeff = p.linear_substitute(a_rows);
    for (const auto& [beta, c] : dpart.terms()) out.add_term(beta, coeff * c);
  }
  return out;
}

namespace {

mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Calls f(gamma) for every gamma <= alpha componentwise.
template <typename F>
void for_each_sub_index(const MultiIndex& alpha, F&& f) {
  MultiIndex gamma(alpha.size(), 0);
  while (true) {
    f(gamma);
    std::size_t i = 0;
    while (i < alpha.size()) {
      if (gamma[i] < alpha[i]) {
        ++gamma[i];
        break;
      }
      gamma[i] = 0;
      ++i;
    }
    if (i == alpha.size()) return;
  }
}

}  // namespace

WeylElement normal_mul(const WeylElement& a, const WeylElement& b) {
  check_same_dimension(a.nvars(), b.nvars(), "normal_mul");
  const std::size_t n = a.nvars();
  WeylElement out(n);
  MultiIndex rest(n);
  for (const auto& [alpha, p] : a.terms()) {
    for (const auto& [beta, q] : b.terms()) {
      // p d^alpha q d^beta = sum_gamma C(alpha,gamma) p (d^gamma q) d^(alpha-gamma+beta)
      for_each_sub_index(alpha, [&](const MultiIndex& gamma) {
        Polynomial dq = q.derivative(gamma);
        if (dq.is_zero()) return;
        mpz_class c = 1;
        for (std::size_t i = 0; i < n; ++i) {
          c *= binomial(alpha[i], gamma[i]);
          rest[i] = alpha[i] - gamma[i] + beta[i];
        }
        out.add_term(rest, (p * dq) * Scalar(mpq_class(c)));
      });
    }
  }
  return out;
}

WeylElement commutator(const WeylElement& a, const WeylElement& b) {
  check_same_dimension(a.nvars(), b.nvars(), "commutator");
  return normal_mul(a, b) - normal_mul(b, a);
}

Polynomial apply(const WeylElement& d, const Polynomial& f) {
  check_same_dimension(d.nvars(), f.nvars(), "apply");
  Polynomial out(f.nvars());
  for (const auto& [alpha, p] : d.terms()) out += p * f.derivative(alpha);
  return out;
}

std::vector<GradedPiece> bigrade(const WeylElement& d) {
  std::map<int, WeylElement> by_weight;
  for (const auto& [alpha, p] : d.terms()) {
    const int k = total_degree(alpha);
    for (const auto& [exps, c] : p.terms()) {
      const int w = total_degree(exps) - k;
      auto [it, _] = by_weight.try_emplace(w, WeylElement(d.nvars()));
      it->second.add_term(alpha, Polynomial::monomial(exps, c));
    }
  }
  std::vector<GradedPiece> out;
  for (auto& [w, e] : by_weight) out.push_back({e.order(), w, std::move(e)});
  return out;
}

bool in_left_ideal(const WeylElement& d, const QuadraticForm& q, MonomialOrder order) {
  check_same_dimension(d.nvars(), q.dim(), "in_left_ideal");
  for (const auto& [alpha, p] : d.terms())
    if (!divide(p, q.polynomial(), order).remainder.is_zero()) return false;
  return true;
}

bool preserves_ideal(const WeylElement& d, const QuadraticForm& q) {
  return in_left_ideal(normal_mul(d, WeylElement(q.polynomial())), q);
}

WeylElement reduce_mod_ideal(const WeylElement& d, const QuadraticForm& q) {
  check_same_dimension(d.nvars(), q.dim(), "reduce_mod_ideal");
  WeylElement out(d.nvars());
  for (const auto& [alpha, p] : d.terms()) out.add_term(alpha, divide(p, q.polynomial()).remainder);
  return out;
}

bool cone_equal(const WeylElement& a, const WeylElement& b, const QuadraticForm& q) {
  return in_left_ideal(a - b, q);
}

}  // namespace conequant
