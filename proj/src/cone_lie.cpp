#include "conequant/cone_lie.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <sstream>

namespace conequant {

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = Scalar(1);
  return v;
}

// Flattened normal form keyed by (z exponents, d exponents).
std::map<MultiIndex, Scalar> flatten(const WeylElement& x) {
  std::map<MultiIndex, Scalar> out;
  for (const auto& [alpha, p] : x.terms()) {
    for (const auto& [beta, c] : p.terms()) {
      MultiIndex key = beta;
      key.insert(key.end(), alpha.begin(), alpha.end());
      out.emplace(std::move(key), c);
    }
  }
  return out;
}

std::string vec_str(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s + ")";
}

}  // namespace

Scalar dual_norm(const QuadraticForm& form, const Vector& phi) {
  const Vector v = form.gram_inverse().apply(phi);
  Scalar s;
  for (std::size_t i = 0; i < phi.size(); ++i) s += phi[i] * v[i];
  return s;
}

Plqs::Plqs(QuadraticForm f, Vector covector) : form(std::move(f)), w(std::move(covector)) {
  const std::size_t n = form.dim();
  if (n <= 2) throw std::invalid_argument("Plqs: dimension must exceed 2");
  if (w.size() != n) throw std::invalid_argument("Plqs: covector has wrong length");
  if (!form.is_real()) throw std::invalid_argument("Plqs: form must be real");
  for (const auto& c : w)
    if (!c.is_real()) throw std::invalid_argument("Plqs: covector must be real");
  const Inertia in = inertia(form.gram());
  if (in.positive != n - 1 || in.negative != 1)
    throw std::invalid_argument("Plqs: signature is not (n-1,1)");
  if (dual_norm(form, w) != Scalar(-1)) throw std::invalid_argument("Plqs: q*(w) must equal -1");
}

Plqs Plqs::standard(std::size_t n) {
  return Plqs(QuadraticForm::standard_lorentzian(n), unit(n, n - 1));
}

Vector Plqs::pointed_vector() const { return form.gram_inverse().apply(w); }

Polynomial tau(const QuadraticForm& form, const Vector& v) { return Polynomial::linear(form.gram().apply(v)); }

WeylElement box(const QuadraticForm& form) {
  const std::size_t n = form.dim();
  WeylElement out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MultiIndex a(n, 0);
      ++a[i];
      ++a[j];
      out.add_term(a, Polynomial::constant(n, form.gram_inverse()(i, j)));
    }
  return out;
}

WeylElement euler_h(std::size_t n) {
  WeylElement out = WeylElement::constant(n, Scalar(static_cast<long>(n) - 2));
  for (std::size_t i = 0; i < n; ++i) {
    MultiIndex a(n, 0);
    a[i] = 1;
    out.add_term(a, Polynomial::variable(n, i) * Scalar(2));
  }
  return out;
}

WeylElement rotation(const QuadraticForm& form, const Vector& u, const Vector& v) {
  return normal_mul(WeylElement(tau(form, u)), WeylElement::directional(v)) -
         normal_mul(WeylElement(tau(form, v)), WeylElement::directional(u));
}

WeylElement phi_map(const QuadraticForm& form, const WeylElement& d) {
  const std::size_t n = form.dim();
  check_same_dimension(n, d.nvars(), "phi_map");
  WeylElement out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (form.gram()(i, j).is_zero()) continue;
      out += form.gram()(i, j) * normal_mul(WeylElement::z(n, i), normal_mul(d, WeylElement::z(n, j)));
    }
  return out;
}

WeylElement psi_map(const QuadraticForm& form, const Vector& phi) {
  const std::size_t n = form.dim();
  const WeylElement w(Polynomial::linear(phi));
  const WeylElement dphi = WeylElement::directional(form.gram_inverse().apply(phi));
  return normal_mul(w, box(form)) - normal_mul(euler_h(n), dphi);
}

int LieBasisElement::weight() const {
  switch (kind) {
    case Kind::mult: return 1;
    case Kind::psi: return -1;
    default: return 0;
  }
}

int LieBasisElement::order() const {
  switch (kind) {
    case Kind::mult:
    case Kind::one: return 0;
    case Kind::psi: return 2;
    default: return 1;
  }
}

std::vector<LieBasisElement> build_spanning_set(const QuadraticForm& form) {
  using K = LieBasisElement::Kind;
  const std::size_t n = form.dim();
  std::vector<LieBasisElement> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector cov = form.gram().apply(unit(n, i));
    out.push_back({K::mult, cov, {}, WeylElement(Polynomial::linear(cov)), "tau(e" + std::to_string(i + 1) + ")"});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.push_back({K::rot, unit(n, i), unit(n, j), rotation(form, unit(n, i), unit(n, j)),
                     "L(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")"});
  out.push_back({K::euler, {}, {}, euler_h(n), "h"});
  for (std::size_t i = 0; i < n; ++i) {
    const Vector cov = form.gram().apply(unit(n, i));
    out.push_back({K::psi, cov, {}, psi_map(form, cov), "Psi(tau(e" + std::to_string(i + 1) + "))"});
  }
  out.push_back({K::one, {}, {}, WeylElement::constant(n, Scalar(1)), "1"});
  for (const auto& b : out)
    if (!preserves_ideal(b.realization, form))
      throw std::logic_error("build_spanning_set: " + b.label + " does not preserve the ideal (Q)");
  return out;
}

SpanSolver::SpanSolver(const QuadraticForm& form, const std::vector<WeylElement>& elements)
    : form_(&form), count_(elements.size()) {
  std::set<MultiIndex> keys;
  for (const auto& e : elements) {
    auto flat = flatten(reduce_mod_ideal(e, form));
    std::vector<std::pair<MultiIndex, Scalar>> col(flat.begin(), flat.end());
    for (const auto& [k, c] : col) keys.insert(k);
    columns_.push_back(std::move(col));
  }
  std::vector<MultiIndex> key_list(keys.begin(), keys.end());
  std::map<MultiIndex, std::size_t> row_of;
  for (std::size_t r = 0; r < key_list.size(); ++r) row_of[key_list[r]] = r;

  // Independent rows of the key-by-element matrix = pivot columns of its transpose.
  ExactMatrix mt(count_, key_list.size());
  for (std::size_t j = 0; j < count_; ++j)
    for (const auto& [k, c] : columns_[j]) mt(j, row_of[k]) = c;
  ExactMatrix reduced = mt;
  const auto pivots = row_reduce(reduced);
  if (pivots.size() != count_) throw std::invalid_argument("SpanSolver: elements are dependent modulo I*D(V)");
  ExactMatrix sub(count_, count_);
  for (std::size_t r = 0; r < count_; ++r) {
    pivot_keys_.push_back(key_list[pivots[r]]);
    for (std::size_t j = 0; j < count_; ++j) sub(r, j) = mt(j, pivots[r]);
  }
  pivot_inverse_ = inverse(sub);
}

std::optional<Vector> SpanSolver::coordinates(const WeylElement& x) const {
  const auto flat = flatten(reduce_mod_ideal(x, *form_));
  Vector rhs(count_);
  for (std::size_t r = 0; r < count_; ++r) {
    auto it = flat.find(pivot_keys_[r]);
    if (it != flat.end()) rhs[r] = it->second;
  }
  Vector c = pivot_inverse_.apply(rhs);
  std::map<MultiIndex, Scalar> recon;
  for (std::size_t j = 0; j < count_; ++j) {
    if (c[j].is_zero()) continue;
    for (const auto& [k, v] : columns_[j]) {
      auto [it, _] = recon.try_emplace(k);
      it->second += c[j] * v;
    }
  }
  std::erase_if(recon, [](const auto& kv) { return kv.second.is_zero(); });
  if (recon != flat) return std::nullopt;
  return c;
}

Vector StructureConstants::bracket(const Vector& x, const Vector& y) const {
  Vector out(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < m_; ++j) {
      if (y[j].is_zero()) continue;
      const Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < m_; ++k)
        if (!(*this)(i, j, k).is_zero()) out[k] += xy * (*this)(i, j, k);
    }
  }
  return out;
}

namespace {

Vector bracket_coordinates(const SpanSolver& solver, const std::vector<LieBasisElement>& basis, std::size_t i,
                           std::size_t j) {
  auto c = solver.coordinates(commutator(basis[i].realization, basis[j].realization));
  if (!c) throw BracketNotInSpan("bracket [" + basis[i].label + ", " + basis[j].label + "] leaves the span");
  return *c;
}

std::vector<WeylElement> realizations(const std::vector<LieBasisElement>& basis) {
  std::vector<WeylElement> out;
  for (const auto& b : basis) out.push_back(b.realization);
  return out;
}

void store(StructureConstants& sc, std::size_t i, std::size_t j, const Vector& c) {
  for (std::size_t k = 0; k < c.size(); ++k) {
    sc(i, j, k) = c[k];
    sc(j, i, k) = -c[k];
  }
}

}  // namespace

StructureConstants structure_constants_serial(const QuadraticForm& form, const std::vector<LieBasisElement>& basis) {
  const SpanSolver solver(form, realizations(basis));
  StructureConstants sc(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) store(sc, i, j, bracket_coordinates(solver, basis, i, j));
  return sc;
}

StructureConstants structure_constants(const QuadraticForm& form, const std::vector<LieBasisElement>& basis) {
  const SpanSolver solver(form, realizations(basis));
  const std::size_t m = basis.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  std::vector<Vector> results(pairs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(pairs.size()); ++p) {
    try {
      results[p] = bracket_coordinates(solver, basis, pairs[p].first, pairs[p].second);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  StructureConstants sc(m);
  for (std::size_t p = 0; p < pairs.size(); ++p) store(sc, pairs[p].first, pairs[p].second, results[p]);
  return sc;
}

ConeLieAlgebra::ConeLieAlgebra(QuadraticForm form)
    : form_(std::move(form)),
      basis_(build_spanning_set(form_)),
      solver_(form_, realizations(basis_)),
      sc_(structure_constants(form_, basis_)) {}

Vector ConeLieAlgebra::require_coordinates(const WeylElement& x) const {
  auto c = coordinates(x);
  if (!c) throw std::invalid_argument("element is outside the span of s~");
  return *c;
}

WeylElement ConeLieAlgebra::realize(const Vector& coords) const {
  WeylElement out(form_.dim());
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (!coords[k].is_zero()) out += coords[k] * basis_[k].realization;
  return out;
}

ExactMatrix killing_form(const StructureConstants& sc, std::size_t s_dim) {
  ExactMatrix k(s_dim, s_dim);
  for (std::size_t a = 0; a < s_dim; ++a)
    for (std::size_t b = a; b < s_dim; ++b) {
      Scalar t;
      // tr(ad_a ad_b) = sum_{c,d} c_{ad}^c c_{bc}^d
      for (std::size_t c = 0; c < s_dim; ++c)
        for (std::size_t d = 0; d < s_dim; ++d) {
          const Scalar& x = sc(a, d, c);
          if (x.is_zero()) continue;
          const Scalar& y = sc(b, c, d);
          if (!y.is_zero()) t += x * y;
        }
      k(a, b) = t;
      k(b, a) = t;
    }
  return k;
}

bool SoReport::ok() const {
  return dim_s == expected_dim_s && jacobi_passed == jacobi_triples && antisymmetric && killing_nondegenerate &&
         graded_homogeneous && graded_dims == std::vector<std::size_t>{n, n * (n - 1) / 2 + 2, n} &&
         (!real_killing_inertia ||
          (real_killing_inertia->positive == 2 * n && real_killing_inertia->negative == n * (n - 1) / 2 + 1));
}

SoReport verify_so_structure(const ConeLieAlgebra& algebra) {
  const auto& sc = algebra.structure();
  const std::size_t m = sc.size();
  const std::size_t n = algebra.form().dim();
  SoReport r;
  r.n = n;
  r.spanning_size = m;
  r.expected_dim_s = (n + 2) * (n + 1) / 2;

  r.antisymmetric = true;
  for (std::size_t i = 0; i < m && r.antisymmetric; ++i)
    for (std::size_t j = 0; j < m && r.antisymmetric; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (sc(i, j, k) != -sc(j, i, k)) {
          r.antisymmetric = false;
          break;
        }

  // Derived algebra [s~, s~] as the span of all bracket vectors.
  ExactMatrix brackets(m * (m - 1) / 2, m);
  std::size_t row = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j, ++row)
      for (std::size_t k = 0; k < m; ++k) brackets(row, k) = sc(i, j, k);
  r.dim_s = rank(brackets);
  bool one_absent = true;
  for (std::size_t rr = 0; rr < brackets.rows(); ++rr)
    if (!brackets(rr, algebra.one_index()).is_zero()) one_absent = false;

  // Sparse copy of the tensor for the Jacobi sweep.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> sparse(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (!sc(i, j, k).is_zero()) sparse[i * m + j].emplace_back(k, sc(i, j, k));
  auto nested = [&](std::size_t a, std::size_t b, std::size_t c, Vector& acc) {
    // [a,[b,c]]
    for (const auto& [l, x] : sparse[b * m + c])
      for (const auto& [k, y] : sparse[a * m + l]) acc[k] += x * y;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        ++r.jacobi_triples;
        Vector acc(m);
        nested(i, j, k, acc);
        nested(j, k, i, acc);
        nested(k, i, j, acc);
        const bool zero = std::all_of(acc.begin(), acc.end(), [](const Scalar& s) { return s.is_zero(); });
        if (zero) {
          ++r.jacobi_passed;
        } else if (r.jacobi_first_failure.empty()) {
          const auto& b = algebra.basis();
          r.jacobi_first_failure = b[i].label + ", " + b[j].label + ", " + b[k].label;
        }
      }

  const std::size_t s_dim = m - 1;
  const ExactMatrix kf = killing_form(sc, s_dim);
  r.killing_nondegenerate = one_absent && rank(kf) == s_dim;
  if (algebra.form().is_real()) r.real_killing_inertia = inertia(kf);

  r.graded_dims = {0, 0, 0};
  r.graded_homogeneous = true;
  for (const auto& b : algebra.basis()) {
    const auto pieces = bigrade(b.realization);
    if (pieces.size() != 1 || pieces[0].weight != b.weight() || pieces[0].order != b.order())
      r.graded_homogeneous = false;
    r.graded_dims[static_cast<std::size_t>(1 - b.weight())] += 1;
  }
  return r;
}

namespace {

struct RelationChecker {
  const QuadraticForm& form;
  RelationReport report;
  void check(const WeylElement& lhs, const WeylElement& rhs, const std::string& what) {
    ++report.checked;
    if (cone_equal(lhs, rhs, form)) {
      ++report.passed;
    } else if (report.first_failure.empty()) {
      report.first_failure = what;
    }
  }
};

}  // namespace

RelationReport verify_commutation_relations(const QuadraticForm& form, const std::vector<Vector>& vs) {
  const std::size_t n = form.dim();
  RelationChecker rc{form, {}};
  const WeylElement h = euler_h(n);
  const WeylElement one = WeylElement::constant(n, Scalar(1));
  const WeylElement zero(n);
  auto t = [&](const Vector& v) { return WeylElement(tau(form, v)); };
  auto psi = [&](const Vector& v) { return psi_map(form, form.gram().apply(v)); };
  auto L = [&](const Vector& u, const Vector& v) { return rotation(form, u, v); };
  auto B = [&](const Vector& u, const Vector& v) { return form.bilinear(u, v); };

  for (std::size_t a = 0; a < vs.size(); ++a) {
    const Vector& u = vs[a];
    rc.check(commutator(h, t(u)), Scalar(2) * t(u), "[h,tau(u)] = 2 tau(u), u=" + vec_str(u));
    rc.check(commutator(h, psi(u)), Scalar(-2) * psi(u), "[h,Psi(tau(v))] = -2 Psi(tau(v)), v=" + vec_str(u));
    rc.check(commutator(one, psi(u)), zero, "1 central");
    for (std::size_t b = 0; b < vs.size(); ++b) {
      const Vector& v = vs[b];
      const std::string uv = " u=" + vec_str(u) + " v=" + vec_str(v);
      rc.check(commutator(psi(v), t(u)), Scalar(2) * L(v, u) - B(v, u) * h, "[Psi(tau(v)),tau(u)] = 2L_{v,u} - B(v,u)h" + uv);
      rc.check(commutator(t(u), t(v)), zero, "tau commutative" + uv);
      rc.check(commutator(psi(u), psi(v)), zero, "Psi commutative" + uv);
      if (a >= b) continue;
      const WeylElement luv = L(u, v);
      rc.check(commutator(h, luv), zero, "[h,L_{u,v}] = 0" + uv);
      for (const Vector& w : vs) {
        rc.check(commutator(luv, t(w)), B(v, w) * t(u) - B(u, w) * t(v), "[L_{u,v},tau(w)]" + uv);
        rc.check(commutator(luv, psi(w)), B(v, w) * psi(u) - B(u, w) * psi(v), "[L_{u,v},Psi(tau(w))]" + uv);
      }
      for (std::size_t c = 0; c < vs.size(); ++c)
        for (std::size_t d = c + 1; d < vs.size(); ++d) {
          const Vector& w = vs[c];
          const Vector& z = vs[d];
          const WeylElement rhs = B(v, w) * L(u, z) - B(u, w) * L(v, z) + B(u, z) * L(v, w) - B(v, z) * L(u, w);
          rc.check(commutator(luv, L(w, z)), rhs, "[L_{u,v},L_{w,z}]" + uv);
        }
    }
  }
  return rc.report;
}

RelationReport verify_phi_psi(const QuadraticForm& form, const std::vector<Vector>& covectors) {
  const long n = static_cast<long>(form.dim());
  RelationChecker rc{form, {}};
  for (const auto& phi : covectors)
    rc.check(phi_map(form, psi_map(form, phi)), Scalar(2 - n) * WeylElement(Polynomial::linear(phi)),
             "Phi(Psi(phi)) = (2-n) phi, phi=" + vec_str(phi));
  return rc.report;
}

Sl2Triple sl2_triple(const Plqs& plqs) {
  const auto& form = plqs.form;
  const Scalar i = Scalar::i();
  Sl2Triple t{i * WeylElement(Polynomial::linear(plqs.w)), euler_h(plqs.dim()), i * psi_map(form, plqs.w)};
  if (!cone_equal(commutator(t.e, t.f), t.h, form)) throw std::logic_error("sl2 triple: [e,f] != h");
  if (!cone_equal(commutator(t.h, t.e), Scalar(2) * t.e, form)) throw std::logic_error("sl2 triple: [h,e] != 2e");
  if (!cone_equal(commutator(t.h, t.f), Scalar(-2) * t.f, form)) throw std::logic_error("sl2 triple: [h,f] != -2f");
  return t;
}

JmResult jacobson_morozov(const Plqs& plqs, const ConeLieAlgebra& algebra) {
  const Sl2Triple t = sl2_triple(plqs);
  const auto& sc = algebra.structure();
  const std::size_t s_dim = algebra.size() - 1;
  const Vector e = algebra.require_coordinates(t.e);
  const Vector h = algebra.require_coordinates(t.h);
  const Vector f = algebra.require_coordinates(t.f);

  // Unknown x = sum_{b < s_dim} x_b basis_b. Rows: ([h,x] + 2x)_k = 0 and [e,x]_k = h_k.
  const std::size_t m = algebra.size();
  ExactMatrix a(2 * m, s_dim);
  Vector rhs(2 * m);
  for (std::size_t b = 0; b < s_dim; ++b) {
    Vector basis_vec(m);
    basis_vec[b] = Scalar(1);
    const Vector hx = sc.bracket(h, basis_vec);
    const Vector ex = sc.bracket(e, basis_vec);
    for (std::size_t k = 0; k < m; ++k) {
      a(k, b) = hx[k] + (k == b ? Scalar(2) : Scalar(0));
      a(m + k, b) = ex[k];
    }
  }
  for (std::size_t k = 0; k < m; ++k) rhs[m + k] = h[k];
  const LinearSolution sol = solve(a, rhs);
  JmResult out;
  out.consistent = sol.particular.has_value();
  out.free_dimension = sol.free_dimension;
  if (out.consistent) {
    out.solution = *sol.particular;
    out.solution.push_back(Scalar(0));  // One coordinate
    out.equals_f = out.solution == f;
  }
  return out;
}

std::vector<Vector> centralizer(const ConeLieAlgebra& algebra, const std::vector<Vector>& subset) {
  const auto& sc = algebra.structure();
  const std::size_t m = algebra.size();
  const std::size_t s_dim = m - 1;
  ExactMatrix a(subset.size() * m, s_dim);
  for (std::size_t b = 0; b < s_dim; ++b) {
    Vector basis_vec(m);
    basis_vec[b] = Scalar(1);
    for (std::size_t x = 0; x < subset.size(); ++x) {
      const Vector br = sc.bracket(subset[x], basis_vec);
      for (std::size_t k = 0; k < m; ++k) a(x * m + k, b) = br[k];
    }
  }
  std::vector<Vector> out;
  for (auto v : null_space(a)) {
    v.push_back(Scalar(0));
    out.push_back(std::move(v));
  }
  return out;
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  std::vector<Vector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t ra = rank(ExactMatrix::from_rows(a));
  return ra == rank(ExactMatrix::from_rows(b)) && ra == rank(ExactMatrix::from_rows(both));
}

bool DualPairResult::ok(std::size_t n) const {
  return k_basis.size() == (n - 1) * (n - 2) / 2 && l_basis.size() == 3 && l_equals_sl2 && mutual;
}

DualPairResult dual_pair(const Plqs& plqs, const ConeLieAlgebra& algebra) {
  const auto& form = plqs.form;
  // v ⊥ v_w  <=>  w(v) = 0.
  const auto perp = null_space(ExactMatrix::from_rows({plqs.w}));
  DualPairResult r;
  for (std::size_t a = 0; a < perp.size(); ++a)
    for (std::size_t b = a + 1; b < perp.size(); ++b)
      r.k_basis.push_back(algebra.require_coordinates(rotation(form, perp[a], perp[b])));
  r.l_basis = centralizer(algebra, r.k_basis);
  const Sl2Triple t = sl2_triple(plqs);
  const std::vector<Vector> sl2 = {algebra.require_coordinates(t.e), algebra.require_coordinates(t.h),
                                   algebra.require_coordinates(t.f)};
  r.l_equals_sl2 = same_span(r.l_basis, sl2);
  r.mutual = same_span(centralizer(algebra, r.l_basis), r.k_basis);
  return r;
}

namespace {

int star_sign(LieBasisElement::Kind k) {
  using K = LieBasisElement::Kind;
  return (k == K::rot || k == K::euler) ? -1 : 1;
}

}  // namespace

Vector star(const ConeLieAlgebra& algebra, const Vector& coords) {
  if (!algebra.form().is_real()) throw std::invalid_argument("star: requires a real form");
  Vector out(coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k)
    out[k] = coords[k].conj() * Scalar(star_sign(algebra.basis()[k].kind));
  return out;
}

Vector cayley(const ConeLieAlgebra& algebra, const Vector& coords) {
  Vector out(coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) out[k] = coords[k] * i_power(algebra.basis()[k].weight());
  return out;
}

StarCayley star_and_cayley(const ConeLieAlgebra& algebra, const WeylElement& d) {
  const Vector c = algebra.require_coordinates(d);
  return {algebra.realize(star(algebra, c)), algebra.realize(cayley(algebra, c))};
}

WeylElement schrodinger_element(const Plqs& plqs, const Scalar& kappa, const Scalar& lambda) {
  const std::size_t n = plqs.dim();
  return WeylElement::constant(n, kappa) + lambda * WeylElement(Polynomial::linear(plqs.w)) +
         psi_map(plqs.form, plqs.w);
}

Sl2Combination star(const Sl2Combination& x) {
  return {x.one.conj(), -x.e.conj(), -x.h.conj(), -x.f.conj()};
}

Sl2Combination schrodinger_combination(const Scalar& kappa, const Scalar& lambda) {
  const Scalar mi(0, -1);
  return {kappa, mi * lambda, Scalar(0), mi};
}

Sl2Combination sl2_decompose(const Plqs& plqs, const WeylElement& x) {
  const Sl2Triple t = sl2_triple(plqs);
  const SpanSolver solver(plqs.form, {WeylElement::constant(plqs.dim(), Scalar(1)), t.e, t.h, t.f});
  const auto c = solver.coordinates(x);
  if (!c) throw std::invalid_argument("sl2_decompose: element outside span{1,e,h,f}");
  return {(*c)[0], (*c)[1], (*c)[2], (*c)[3]};
}

WeylElement sl2_realize(const Plqs& plqs, const Sl2Combination& x) {
  const Sl2Triple t = sl2_triple(plqs);
  return WeylElement::constant(plqs.dim(), x.one) + x.e * t.e + x.h * t.h + x.f * t.f;
}

ExactMatrix cayley_isometry(const QuadraticForm& form, const ExactMatrix& k) {
  const std::size_t n = form.dim();
  const ExactMatrix s = form.gram_inverse() * k;
  const ExactMatrix id = ExactMatrix::identity(n);
  ExactMatrix g = (id - s) * inverse(id + s);
  if (!(g.transpose() * form.gram() * g == form.gram()))
    throw std::logic_error("cayley_isometry: result does not preserve the form");
  return g;
}

}  // namespace conequant
