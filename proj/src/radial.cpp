#include "conequant/radial.hpp"

#include <cmath>
#include <stdexcept>

namespace conequant {

Laurent::Laurent(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(0, c);
}

Laurent Laurent::monomial(int exponent, const Scalar& c) {
  Laurent out;
  out.add_term(exponent, c);
  return out;
}

bool Laurent::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

int Laurent::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }

Scalar Laurent::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Laurent::add_term(int exponent, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Laurent Laurent::derivative() const {
  Laurent out;
  for (const auto& [e, c] : terms_)
    if (e != 0) out.add_term(e - 1, c * Scalar(e));
  return out;
}

std::complex<double> Laurent::evaluate(double t) const {
  std::complex<double> s = 0.0;
  for (const auto& [e, c] : terms_) s += c.to_complex() * std::pow(t, e);
  return s;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Laurent& Laurent::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    const auto& [e, c] = *it;
    if (e == 0) {
      s += c.to_string();
      continue;
    }
    if (!c.is_one()) s += c.to_string() + "*";
    s += e == 1 ? "t" : "t^" + std::to_string(e);
  }
  return s;
}

RadialOperator::RadialOperator(const Laurent& c) {
  if (!c.is_zero()) terms_.emplace(0, c);
}

RadialOperator RadialOperator::derivative(int order) {
  RadialOperator out;
  out.add_term(order, Laurent(Scalar(1)));
  return out;
}

Laurent RadialOperator::coefficient(int j) const {
  auto it = terms_.find(j);
  return it == terms_.end() ? Laurent() : it->second;
}

void RadialOperator::add_term(int j, const Laurent& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(j, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RadialOperator& RadialOperator::operator+=(const RadialOperator& o) {
  for (const auto& [j, c] : o.terms_) add_term(j, c);
  return *this;
}

RadialOperator& RadialOperator::operator-=(const RadialOperator& o) {
  for (const auto& [j, c] : o.terms_) add_term(j, c * Scalar(-1));
  return *this;
}

RadialOperator& RadialOperator::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [j, v] : terms_) v *= c;
  return *this;
}

std::complex<double> RadialOperator::apply_numeric(double t, const double* f_derivs) const {
  std::complex<double> s = 0.0;
  for (const auto& [j, c] : terms_) s += c.evaluate(t) * f_derivs[j];
  return s;
}

std::string RadialOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    const auto& [j, c] = *it;
    const std::string d = j == 0 ? "" : (j == 1 ? "d" : "d^" + std::to_string(j));
    if (d.empty()) {
      s += c.to_string();
    } else if (c == Laurent(Scalar(1))) {
      s += d;
    } else {
      s += "(" + c.to_string() + ")*" + d;
    }
  }
  return s;
}

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

namespace {

RadialOperator compose_raw(const RadialOperator& a, const RadialOperator& b) {
  RadialOperator out;
  for (const auto& [j, c] : a.terms())
    for (const auto& [k, d] : b.terms()) {
      Laurent dm = d;
      for (int m = 0; m <= j; ++m) {
        if (dm.is_zero()) break;
        out.add_term(j - m + k, (c * dm) * Scalar(binomial(j, m)));
        dm = dm.derivative();
      }
    }
  return out;
}

const RadialOperator& require_class(const RadialOperator& op, const char* what) {
  for (const auto& [j, c] : op.terms())
    if (c.min_exponent() < -1)
      throw LaurentClassError(std::string(what) + ": coefficient of d^" + std::to_string(j) + " has power t^" +
                              std::to_string(c.min_exponent()));
  return op;
}

}  // namespace

RadialOperator compose(const RadialOperator& a, const RadialOperator& b) {
  RadialOperator out = compose_raw(a, b);
  require_class(out, "compose");
  return out;
}

// The individual products may leave the class (F F carries t^-2), the commutator must not.
RadialOperator commutator(const RadialOperator& a, const RadialOperator& b) {
  RadialOperator out = compose_raw(a, b) - compose_raw(b, a);
  require_class(out, "commutator");
  return out;
}

namespace {

// Substitution t -> -t, an algebra automorphism of the radial operators.
RadialOperator reflect(const RadialOperator& op) {
  RadialOperator out;
  for (const auto& [j, c] : op.terms()) {
    Laurent flipped;
    for (const auto& [e, v] : c.terms()) flipped.add_term(e, ((e + j) % 2 == 0) ? v : -v);
    out.add_term(j, flipped);
  }
  return out;
}

}  // namespace

RadialOperator lower_cone_transform(const RadialOperator& op) { return Scalar(-1) * reflect(op); }

RadialOperator isotypic_restrict(const Sl2Combination& x, const IsotypicParams& p) {
  if (p.ell < 0) throw std::invalid_argument("isotypic_restrict: ell must be nonnegative");
  const Scalar i = Scalar::i();
  const long casimir = static_cast<long>(p.ell) * (p.ell + 1);
  RadialOperator e(Laurent::monomial(1, i));
  RadialOperator h(Laurent::monomial(0, Scalar(2)));
  h.add_term(1, Laurent::monomial(1, Scalar(2)));
  RadialOperator f(Laurent::monomial(-1, Scalar(-casimir) * i));
  f.add_term(1, Laurent::monomial(0, Scalar(2) * i));
  f.add_term(2, Laurent::monomial(1, i));
  RadialOperator out = RadialOperator(Laurent(x.one)) + x.e * e + x.h * h + x.f * f;
  return p.cone == Cone::upper ? out : reflect(out);
}

RadialOperator isotypic_restrict(const Plqs& plqs, const WeylElement& x, const IsotypicParams& p) {
  return isotypic_restrict(sl2_decompose(plqs, x), p);
}

Sl2Combination sl2_bracket(const Sl2Combination& x, const Sl2Combination& y) {
  // [e,f] = h, [h,e] = 2e, [h,f] = -2f; the identity is central.
  Sl2Combination out{Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
  out.h = x.e * y.f - x.f * y.e;
  out.e = Scalar(2) * (x.h * y.e - x.e * y.h);
  out.f = Scalar(-2) * (x.h * y.f - x.f * y.h);
  return out;
}

RadialOperator physics_operator(int ell, const Scalar& kappa, const Scalar& lambda) {
  const long casimir = static_cast<long>(ell) * (ell + 1);
  RadialOperator laplace_plus = RadialOperator::derivative(2);
  laplace_plus.add_term(1, Laurent::monomial(-1, Scalar(2)));
  Laurent potential = Laurent::monomial(-2, Scalar(-casimir)) + Laurent::monomial(-1, kappa) + Laurent(lambda);
  laplace_plus.add_term(0, potential);
  return compose(RadialOperator(Laurent::monomial(1)), laplace_plus);
}

bool matches_physics(const RadialOperator& op, const Scalar& kappa, const Scalar& lambda, int ell) {
  return op == physics_operator(ell, kappa, lambda);
}

bool physics_identity(const Scalar& kappa, const Scalar& lambda, int ell) {
  return matches_physics(isotypic_restrict(schrodinger_combination(kappa, lambda), {ell, Cone::upper}), kappa,
                         lambda, ell);
}

bool physics_identity(int ell) {
  // Both sides are affine in (kappa, lambda): compare the value at the origin
  // and the two partial coefficients.
  const IsotypicParams p{ell, Cone::upper};
  auto lhs = [&](long k, long l) { return isotypic_restrict(schrodinger_combination(Scalar(k), Scalar(l)), p); };
  auto rhs = [&](long k, long l) { return physics_operator(ell, Scalar(k), Scalar(l)); };
  const RadialOperator l0 = lhs(0, 0);
  const RadialOperator r0 = rhs(0, 0);
  return l0 == r0 && lhs(1, 0) - l0 == rhs(1, 0) - r0 && lhs(0, 1) - l0 == rhs(0, 1) - r0;
}

Laurent casimir_scalar(int ell) {
  const IsotypicParams p{ell, Cone::upper};
  const Scalar zero(0);
  const RadialOperator e = isotypic_restrict(Sl2Combination{zero, Scalar(1), zero, zero}, p);
  const RadialOperator h = isotypic_restrict(Sl2Combination{zero, zero, Scalar(1), zero}, p);
  const RadialOperator f = isotypic_restrict(Sl2Combination{zero, zero, zero, Scalar(1)}, p);
  const RadialOperator c = Scalar::rational(1, 2) * compose(h, h) + compose(e, f) + compose(f, e);
  if (c.order() > 0 || !c.coefficient(0).is_constant())
    throw std::logic_error("casimir_scalar: result is not a scalar: " + c.to_string());
  return c.coefficient(0);
}

Laurent apply_to_power(const RadialOperator& op, const Scalar& mu) {
  Laurent out;
  for (const auto& [j, c] : op.terms()) {
    Scalar falling(1);
    for (int m = 0; m < j; ++m) falling *= mu - Scalar(m);
    for (const auto& [e, v] : c.terms()) out.add_term(e - j, v * falling);
  }
  return out;
}

namespace {

void require_positive(const Scalar& nu) {
  if (!nu.is_real() || sgn(nu.re()) <= 0) throw std::invalid_argument("power_solution_check: nu must be positive");
}

}  // namespace

bool power_solution_check(const Scalar& nu, int ell, const Scalar& mu) {
  require_positive(nu);
  const Scalar zero(0);
  const RadialOperator op = isotypic_restrict(Sl2Combination{Scalar(1), zero, Scalar::i() * nu, zero}, {ell, Cone::upper});
  return apply_to_power(op, mu).is_zero();
}

bool power_solution_check(const Scalar& nu, int ell) {
  require_positive(nu);
  const Scalar mu = Scalar(-1) + Scalar::i() / (Scalar(2) * nu);
  return power_solution_check(nu, ell, mu);
}

}  // namespace conequant
