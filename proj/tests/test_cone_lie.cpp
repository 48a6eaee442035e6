#include <random>

#include "conequant/cone_lie.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace conequant;

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = Scalar(1);
  return v;
}

WeylElement zz(std::size_t n, std::size_t i) { return WeylElement::z(n, i); }
WeylElement dd(std::size_t n, std::size_t i) { return WeylElement::d(n, i); }

// Split form: hyperbolic plane plus identity, signature (n-1,1) but not diagonal.
Plqs hyperbolic_plqs(std::size_t n) {
  ExactMatrix b(n, n);
  b(0, 1) = Scalar(1);
  b(1, 0) = Scalar(1);
  for (std::size_t i = 2; i < n; ++i) b(i, i) = Scalar(1);
  Vector w(n);
  w[0] = Scalar(1);
  w[1] = Scalar::rational(-1, 2);
  return Plqs(QuadraticForm(b), w);
}

const ConeLieAlgebra& algebra4() {
  static const ConeLieAlgebra a(QuadraticForm::standard_lorentzian(4));
  return a;
}

}  // namespace

TEST_CASE("PLQS validation") {
  CHECK_NOTHROW(Plqs::standard(3));
  CHECK_THROWS_AS(Plqs::standard(2), std::invalid_argument);
  CHECK_THROWS_AS(Plqs(QuadraticForm(ExactMatrix::identity(4)), unit(4, 3)), std::invalid_argument);
  Vector w(4);
  w[3] = Scalar(2);
  CHECK_THROWS_AS(Plqs(QuadraticForm::standard_lorentzian(4), w), std::invalid_argument);
  CHECK_NOTHROW(hyperbolic_plqs(4));
}

TEST_CASE("spanning set for n = 4") {
  const auto& a = algebra4();
  CHECK(a.size() == 16);
  const auto& basis = a.basis();
  // h = 2 sum z d + 2
  WeylElement h = WeylElement::constant(4, Scalar(2));
  for (std::size_t i = 0; i < 4; ++i) h += Scalar(2) * normal_mul(zz(4, i), dd(4, i));
  bool found_h = false;
  bool found_rot = false;
  for (const auto& b : basis) {
    CHECK(preserves_ideal(b.realization, a.form()));
    const auto g = bigrade(b.realization);
    REQUIRE(g.size() == 1);
    CHECK(g[0].weight == b.weight());
    if (b.kind == LieBasisElement::Kind::euler) {
      found_h = true;
      CHECK(b.realization == h);
    }
  }
  const WeylElement l12 = rotation(a.form(), unit(4, 0), unit(4, 1));
  found_rot = l12 == normal_mul(zz(4, 0), dd(4, 1)) - normal_mul(zz(4, 1), dd(4, 0));
  CHECK(found_h);
  CHECK(found_rot);
  CHECK(rotation(a.form(), unit(4, 1), unit(4, 0)) == -l12);
}

TEST_CASE("Phi and Psi") {
  const QuadraticForm q = QuadraticForm::standard_lorentzian(4);
  const Vector w = unit(4, 3);
  const WeylElement psi = psi_map(q, w);
  const WeylElement expected = normal_mul(zz(4, 3), box(q)) + normal_mul(euler_h(4), dd(4, 3));
  CHECK(psi == expected);
  CHECK(cone_equal(phi_map(q, psi), Scalar(-2) * zz(4, 3), q));
  CHECK(phi_map(q, WeylElement::constant(4, Scalar(1))) == WeylElement(q.polynomial()));
  CHECK(cone_equal(phi_map(q, dd(4, 0)), zz(4, 0), q));
  const auto g = bigrade(psi);
  REQUIRE(g.size() == 1);
  CHECK(g[0].order == 2);
  CHECK(g[0].weight == -1);

  std::mt19937 rng(21);
  std::vector<Vector> covectors;
  for (int k = 0; k < 10; ++k) {
    Vector phi(4);
    for (auto& c : phi) c = testutil::random_scalar(rng, false);
    covectors.push_back(phi);
  }
  const RelationReport r = verify_phi_psi(q, covectors);
  CHECK(r.checked == 10);
  CHECK(r.ok());

  // Psi is linear and injective on a covector basis.
  std::vector<WeylElement> images;
  for (std::size_t i = 0; i < 4; ++i) images.push_back(psi_map(q, unit(4, i)));
  CHECK(psi_map(q, covectors[0]) == Scalar(covectors[0][0]) * images[0] + covectors[0][1] * images[1] +
                                        covectors[0][2] * images[2] + covectors[0][3] * images[3]);
  CHECK_NOTHROW(SpanSolver(q, images));
}

TEST_CASE("commutation relations") {
  const QuadraticForm q = QuadraticForm::standard_lorentzian(4);
  auto tau_v = [&](const Vector& v) { return WeylElement(tau(q, v)); };
  auto psi_v = [&](const Vector& v) { return psi_map(q, q.gram().apply(v)); };
  const WeylElement h = euler_h(4);
  for (std::size_t i = 0; i < 4; ++i) {
    const Vector u = unit(4, i);
    CHECK(cone_equal(commutator(h, tau_v(u)), Scalar(2) * tau_v(u), q));
    CHECK(cone_equal(commutator(h, psi_v(u)), Scalar(-2) * psi_v(u), q));
    for (std::size_t j = 0; j < 4; ++j) {
      const Vector v = unit(4, j);
      const WeylElement rhs = Scalar(2) * rotation(q, v, u) - q.bilinear(v, u) * h;
      CHECK(cone_equal(commutator(psi_v(v), tau_v(u)), rhs, q));
    }
  }
  CHECK(commutator(rotation(q, unit(4, 0), unit(4, 1)), tau_v(unit(4, 2))).is_zero());

  std::vector<Vector> vectors;
  for (std::size_t i = 0; i < 4; ++i) vectors.push_back(unit(4, i));
  Vector mixed{Scalar(1), Scalar::rational(-1, 2), Scalar(3), Scalar::rational(2, 3)};
  vectors.push_back(mixed);
  const RelationReport r = verify_commutation_relations(q, vectors);
  CHECK(r.checked > 0);
  CHECK(r.ok());
}

TEST_CASE("so(n+2) structure for n = 4") {
  const SoReport r = verify_so_structure(algebra4());
  CHECK(r.dim_s == 15);
  CHECK(r.jacobi_triples == 560);
  CHECK(r.jacobi_passed == 560);
  CHECK(r.antisymmetric);
  CHECK(r.killing_nondegenerate);
  CHECK(r.graded_dims == std::vector<std::size_t>{4, 8, 4});
  REQUIRE(r.real_killing_inertia);
  CHECK(r.real_killing_inertia->positive == 8);
  CHECK(r.real_killing_inertia->negative == 7);
}

TEST_CASE("parallel and serial structure constants agree") {
  const auto& a = algebra4();
  CHECK(structure_constants(a.form(), a.basis()) == structure_constants_serial(a.form(), a.basis()));
  const Plqs p = hyperbolic_plqs(4);
  const auto basis = build_spanning_set(p.form);
  CHECK(structure_constants(p.form, basis) == structure_constants_serial(p.form, basis));
}

TEST_CASE("sl2 triple, Jacobson-Morozov and dual pair for n = 4") {
  const Plqs p = Plqs::standard(4);
  const Sl2Triple t = sl2_triple(p);
  CHECK(cone_equal(commutator(t.e, t.f), t.h, p.form));
  const JmResult jm = jacobson_morozov(p, algebra4());
  CHECK(jm.unique());
  CHECK(jm.equals_f);
  const DualPairResult dp = dual_pair(p, algebra4());
  CHECK(dp.k_basis.size() == 3);
  CHECK(dp.l_basis.size() == 3);
  CHECK(dp.l_equals_sl2);
  CHECK(dp.mutual);
  CHECK(dp.ok(4));
}

TEST_CASE("n = 6: dim s = 28 and dual pair (10, 3)") {
  const Plqs p = Plqs::standard(6);
  const ConeLieAlgebra a(p.form);
  const SoReport r = verify_so_structure(a);
  CHECK(r.dim_s == 28);
  CHECK(r.jacobi_passed == r.jacobi_triples);
  const DualPairResult dp = dual_pair(p, a);
  CHECK(dp.k_basis.size() == 10);
  CHECK(dp.l_basis.size() == 3);
  CHECK(dp.ok(6));
}

TEST_CASE("n = 3: k_w is abelian and the dual pair degenerates") {
  const Plqs p = Plqs::standard(3);
  const ConeLieAlgebra a(p.form);
  CHECK(verify_so_structure(a).dim_s == 10);
  const DualPairResult dp = dual_pair(p, a);
  CHECK(dp.k_basis.size() == 1);
  CHECK(dp.l_basis.size() == 4);
  CHECK_FALSE(dp.ok(3));
}

TEST_CASE("a non-diagonal PLQS carries the same structure") {
  const Plqs p = hyperbolic_plqs(4);
  const ConeLieAlgebra a(p.form);
  const SoReport r = verify_so_structure(a);
  CHECK(r.dim_s == 15);
  CHECK(r.jacobi_passed == r.jacobi_triples);
  CHECK_NOTHROW(sl2_triple(p));
  const JmResult jm = jacobson_morozov(p, a);
  CHECK(jm.unique());
  CHECK(jm.equals_f);
  CHECK(dual_pair(p, a).ok(4));
}

TEST_CASE("star and Cayley transform") {
  const auto& a = algebra4();
  const StarCayley h = star_and_cayley(a, euler_h(4));
  CHECK(cone_equal(h.star, -euler_h(4), a.form()));
  CHECK(cone_equal(h.cayley, euler_h(4), a.form()));
  const StarCayley z4 = star_and_cayley(a, Scalar::i() * zz(4, 3));
  CHECK(cone_equal(z4.cayley, -zz(4, 3), a.form()));
  CHECK(cone_equal(z4.star, -Scalar::i() * zz(4, 3), a.form()));

  const WeylElement l = rotation(a.form(), unit(4, 0), unit(4, 2));
  const Vector lc = a.require_coordinates(l);
  CHECK(star(a, star(a, lc)) == lc);
  CHECK_THROWS_AS(star_and_cayley(a, normal_mul(dd(4, 0), dd(4, 0))), std::invalid_argument);

  const auto& sc = a.structure();
  std::mt19937 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    Vector x(a.size()), y(a.size());
    for (auto& c : x) c = testutil::random_scalar(rng);
    for (auto& c : y) c = testutil::random_scalar(rng);
    CHECK(star(a, sc.bracket(x, y)) == sc.bracket(star(a, y), star(a, x)));
    Vector sx = star(a, x);
    CHECK(star(a, sx) == x);
  }
}

TEST_CASE("Cayley transform maps the s*(R) basis onto s(R) as a Lie isomorphism") {
  const auto& a = algebra4();
  const auto& sc = a.structure();
  const std::size_t m = a.size();
  std::vector<Vector> real_star;
  std::vector<Vector> images;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    Vector x(m);
    x[k] = a.basis()[k].weight() == 0 ? Scalar(1) : Scalar::i();
    Vector neg = star(a, x);
    for (auto& c : neg) c = -c;
    CHECK(neg == x);
    real_star.push_back(x);
    const Vector fx = cayley(a, x);
    CHECK(fx[k].is_real());
    CHECK((fx[k] == Scalar(1) || fx[k] == Scalar(-1)));
    images.push_back(fx);
  }
  // c-tensor of the images in terms of themselves equals that of s*(R).
  for (std::size_t i = 0; i < real_star.size(); ++i)
    for (std::size_t j = 0; j < real_star.size(); ++j)
      CHECK(cayley(a, sc.bracket(real_star[i], real_star[j])) == sc.bracket(images[i], images[j]));
}

TEST_CASE("Schroedinger family") {
  const Plqs p = Plqs::standard(4);
  const WeylElement s0 = schrodinger_element(p, Scalar(1), Scalar(0));
  CHECK(cone_equal(s0, WeylElement::constant(4, Scalar(1)) + psi_map(p.form, p.w), p.form));
  const Scalar lambda = Scalar::rational(-1, 9);
  const WeylElement s = schrodinger_element(p, Scalar(3), lambda);
  const auto g = bigrade(s);
  REQUIRE(g.size() == 3);
  CHECK(g[0].order == 2);
  CHECK(g[0].weight == -1);
  CHECK(g[0].element == psi_map(p.form, p.w));
  CHECK(g[1].weight == 0);
  CHECK(g[1].element == WeylElement::constant(4, Scalar(3)));
  CHECK(g[2].weight == 1);
  CHECK(g[2].element == lambda * zz(4, 3));
  CHECK(sl2_decompose(p, s) == schrodinger_combination(Scalar(3), lambda));
  CHECK(cone_equal(sl2_realize(p, schrodinger_combination(Scalar(3), lambda)), s, p.form));
}

TEST_CASE("rational isometries from the Cayley transform") {
  const QuadraticForm q = QuadraticForm::standard_lorentzian(4);
  ExactMatrix k(4, 4);
  k(0, 1) = Scalar::rational(1, 2);
  k(1, 0) = Scalar::rational(-1, 2);
  k(2, 3) = Scalar::rational(1, 3);
  k(3, 2) = Scalar::rational(-1, 3);
  k(0, 3) = Scalar(1);
  k(3, 0) = Scalar(-1);
  const ExactMatrix g = cayley_isometry(q, k);
  CHECK(g.transpose() * q.gram() * g == q.gram());
  for (const auto& b : algebra4().basis())
    CHECK(cone_equal(phi_map(q, b.realization.linear_change(g)), phi_map(q, b.realization).linear_change(g), q));
}
