#include "conequant/polynomial.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace conequant {

int total_degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

void check_same_dimension(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

Polynomial Polynomial::constant(std::size_t nvars, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(MultiIndex(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("Polynomial::variable: index out of range");
  MultiIndex e(nvars, 0);
  e[index] = 1;
  return monomial(e);
}

Polynomial Polynomial::monomial(const MultiIndex& exps, const Scalar& c) {
  Polynomial p(exps.size());
  p.add_term(exps, c);
  return p;
}

Polynomial Polynomial::linear(const std::vector<Scalar>& coeffs) {
  Polynomial p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    MultiIndex e(coeffs.size(), 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.rbegin()->first);
}

Scalar Polynomial::coefficient(const MultiIndex& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::add_term(const MultiIndex& exps, const Scalar& c) {
  check_same_dimension(exps.size(), n_, "Polynomial::add_term");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_dimension(n_, o.n_, "Polynomial::+");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same_dimension(n_, o.n_, "Polynomial::-");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same_dimension(a.n_, b.n_, "Polynomial::*");
  Polynomial out(a.n_);
  MultiIndex e(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::derivative(const MultiIndex& alpha) const {
  check_same_dimension(alpha.size(), n_, "Polynomial::derivative");
  Polynomial out(n_);
  MultiIndex e(n_);
  for (const auto& [exps, c] : terms_) {
    mpz_class factor = 1;
    bool vanishes = false;
    for (std::size_t i = 0; i < n_; ++i) {
      if (exps[i] < alpha[i]) {
        vanishes = true;
        break;
      }
      for (int k = 0; k < alpha[i]; ++k) factor *= exps[i] - k;
      e[i] = exps[i] - alpha[i];
    }
    if (!vanishes) out.add_term(e, c * Scalar(mpq_class(factor)));
  }
  return out;
}

Polynomial Polynomial::linear_substitute(const std::vector<std::vector<Scalar>>& a) const {
  std::vector<Polynomial> images;
  images.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) images.push_back(Polynomial::linear(a.at(i)));
  Polynomial out(n_);
  for (const auto& [exps, c] : terms_) {
    Polynomial term = Polynomial::constant(n_, c);
    for (std::size_t i = 0; i < n_; ++i) {
      for (int k = 0; k < exps[i]; ++k) term = term * images[i];
    }
    out += term;
  }
  return out;
}

namespace {

MultiIndex leading_exponent(const Polynomial& p, MonomialOrder order) {
  if (order == MonomialOrder::graded_lex) return p.terms().rbegin()->first;
  const MultiIndex* best = nullptr;
  for (const auto& [e, c] : p.terms()) {
    if (best == nullptr || PureLex{}(*best, e)) best = &e;
  }
  return *best;
}

}  // namespace

DivisionResult divide(const Polynomial& p, const Polynomial& q, MonomialOrder order) {
  check_same_dimension(p.nvars(), q.nvars(), "divide");
  if (q.is_zero()) throw std::domain_error("divide: zero divisor");
  const std::size_t n = p.nvars();
  const MultiIndex lead_q = leading_exponent(q, order);
  const Scalar lead_c = q.coefficient(lead_q);

  DivisionResult res{Polynomial(n), Polynomial(n)};
  Polynomial rest = p;
  MultiIndex shift(n);
  while (!rest.is_zero()) {
    const MultiIndex lead = leading_exponent(rest, order);
    const Scalar c = rest.coefficient(lead);
    bool divisible = true;
    for (std::size_t i = 0; i < n; ++i) {
      shift[i] = lead[i] - lead_q[i];
      if (shift[i] < 0) divisible = false;
    }
    if (divisible) {
      Polynomial m = Polynomial::monomial(shift, c / lead_c);
      res.quotient += m;
      rest -= m * q;
    } else {
      res.remainder.add_term(lead, c);
      rest.add_term(lead, -c);
    }
  }
  return res;
}

}  // namespace conequant
