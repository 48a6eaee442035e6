// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "conequant/cone_lie.hpp"
#include "conequant/dsl.hpp"
#include "conequant/radial.hpp"
#include "conequant/sl2_pencil.hpp"
#include "conequant/spectral.hpp"

using namespace conequant;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && seconds > time_limit) {
    o.pass = false;
    o.detail += "; over the time limit";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), seconds);
  std::fflush(stdout);
}

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = Scalar(1);
  return v;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome lie_structure() {
  std::string detail;
  bool ok = true;
  for (std::size_t n : {4u, 6u}) {
    const QuadraticForm q = QuadraticForm::standard_lorentzian(n);
    const ConeLieAlgebra a(q);
    const SoReport so = verify_so_structure(a);
    std::vector<Vector> vectors;
    for (std::size_t i = 0; i < n; ++i) vectors.push_back(unit(n, i));
    const RelationReport rel = verify_commutation_relations(q, vectors);
    std::vector<Vector> covectors;
    for (std::size_t i = 0; i < n; ++i) covectors.push_back(unit(n, i));
    const RelationReport pp = verify_phi_psi(q, covectors);
    const std::size_t expected = (n + 2) * (n + 1) / 2;
    ok = ok && so.dim_s == expected && so.jacobi_passed == so.jacobi_triples && rel.ok() && pp.ok();
    detail += "n=" + std::to_string(n) + ": dim s " + std::to_string(so.dim_s) + ", Jacobi " +
              std::to_string(so.jacobi_passed) + "/" + std::to_string(so.jacobi_triples) + ", relations " +
              std::to_string(rel.passed) + "/" + std::to_string(rel.checked) + ", Phi Psi " +
              std::to_string(pp.passed) + "/" + std::to_string(pp.checked) + "; ";
  }
  return {ok, detail};
}

Outcome sl2_and_jm() {
  const Plqs p = Plqs::standard(4);
  sl2_triple(p);
  const ConeLieAlgebra a(p.form);
  const JmResult jm = jacobson_morozov(p, a);
  return {jm.unique() && jm.equals_f,
          std::string("[e,f]=h, [h,e]=2e, [h,f]=-2f; JM ") + (jm.unique() ? "unique" : "not unique") +
              (jm.equals_f ? ", equal to f" : "")};
}

Outcome dual_pair_n4() {
  const Plqs p = Plqs::standard(4);
  const ConeLieAlgebra a(p.form);
  const DualPairResult dp = dual_pair(p, a);
  return {dp.ok(4) && dp.k_basis.size() == 3 && dp.l_basis.size() == 3,
          "dim k_w " + std::to_string(dp.k_basis.size()) + ", dim l_w " + std::to_string(dp.l_basis.size()) +
              (dp.mutual ? ", mutual centralizers" : ", not mutual")};
}

Outcome physics_and_casimir() {
  int ok = 0;
  for (int ell = 0; ell <= 10; ++ell)
    if (physics_identity(ell) && casimir_scalar(ell) == Laurent(Scalar(2L * ell * (ell + 1)))) ++ok;
  return {ok == 11, std::to_string(ok) + "/11 values of l with symbolic kappa, lambda"};
}

Outcome hydrogen_spectrum() {
  const SpectrumReport r = degeneracy_table(1.0, 6, 200, 1.0, 7);
  double worst3 = 0.0;
  double worst6 = 0.0;
  for (const auto& row : r.rows) (row.n <= 3 ? worst3 : worst6) = std::max(row.n <= 3 ? worst3 : worst6, row.rel_err);
  const bool ok = r.all_found() && r.all_absent() && worst3 < 1e-8 && worst6 < 1e-3 && r.rows.size() == 21;
  return {ok, std::to_string(r.rows.size()) + " levels, max rel err " + fmt(worst3) + " (n<=3), " + fmt(worst6) +
                  " (n<=6); " + std::to_string(r.absences.size()) + " (n, l>=n) absences checked"};
}

Outcome degeneracy() {
  const SpectrumReport r = degeneracy_table(1.0, 5, 200, 1.0, 4);
  std::string d;
  bool ok = r.degeneracy.size() == 5;
  for (const auto& [n, g] : r.degeneracy) {
    d += std::to_string(n) + ":" + std::to_string(g) + " ";
    ok = ok && g == n * n;
  }
  return {ok, "n:degeneracy " + d};
}

Outcome lower_cone() {
  bool ok = true;
  std::size_t negatives = 0;
  for (int ell = 0; ell <= 3; ++ell) {
    double previous = 1e300;
    for (std::size_t size : {100u, 200u, 400u}) {
      const LowerConeResult r = lower_cone_bound_states(1.0, ell, size);
      negatives += r.negative.size();
      ok = ok && r.negative.empty() && r.min_positive > 0 && r.min_positive < previous;
      previous = r.min_positive;
    }
  }
  return {ok, std::to_string(negatives) + " eigenvalues below -1e-10; minimum positive eigenvalue decreasing in N"};
}

Outcome compact_generator() {
  double worst = 0.0;
  for (int ell : {0, 1, 2}) {
    const auto s = compact_spectrum(ell, 60);
    for (int k = 0; k < 10; ++k) worst = std::max(worst, std::abs(s.at(k) - 2.0 * (k + ell + 1)));
  }
  return {worst < 1e-8, "max |mu - 2(k+l+1)| = " + fmt(worst)};
}

Outcome scaling() {
  double worst = 0.0;
  for (int ell : {0, 1, 2}) {
    const auto b1 = bound_states(assemble_pencil(build_basis(ell, 200, 1.0), 1.0), 4);
    const auto b2 = bound_states(assemble_pencil(build_basis(ell, 200, 2.0), 2.0), 4);
    if (b1.size() < 4 || b2.size() < 4) return {false, "too few bound states"};
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(b2[k] - 4.0 * b1[k]) / std::abs(4.0 * b1[k]));
  }
  return {worst < 1e-6, "max rel deviation " + fmt(worst)};
}

Outcome monodromy_criterion() {
  double worst = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double lambda = -k / 10.0;
    const auto closed = monodromy_closed_form(lambda);
    worst = std::max(worst, std::abs(monodromy(lambda).integral - closed) / std::abs(closed));
  }
  const ScanVerdict v = check_scan(monodromy_scan(-1.2, -0.01, 0.001), 1.0, -1.2, -0.01);
  const MonodromyResult at_i = monodromy({0.0, 1.0});
  const double dev = std::abs(at_i.modulus - 1.0);
  return {worst < 1e-10 && v.ok() && !v.hits.empty() && dev > 0.1,
          "I rel err " + fmt(worst) + "; " + std::to_string(v.hits.size()) + " grid hits, " +
              std::to_string(v.stray_hits.size()) + " stray; ||M(i)| - 1| = " + fmt(dev)};
}

Outcome residuals() {
  double res = 0.0;
  double dev = 0.0;
  std::size_t pairs = 0;
  for (auto [n, ell] : std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {2, 1}, {3, 1}}) {
    const AdjointCheck c = residual_and_adjoint_check(n, ell, 1.0);
    res = std::max(res, c.residual);
    dev = std::max(dev, c.max_deviation());
    pairs = std::max(pairs, c.pairs);
  }
  return {res < 1e-8 && dev < 1e-9 && pairs >= 20,
          "max residual " + fmt(res) + ", max skewness deviation " + fmt(dev) + " on " + std::to_string(pairs) + " pairs"};
}

std::string random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 8);
  std::uniform_int_distribution<int> var(1, 4);
  std::uniform_int_distribution<int> small(1, 9);
  switch (pick(rng)) {
    case 0: return "z" + std::to_string(var(rng));
    case 1: return "d" + std::to_string(var(rng));
    case 2: return std::to_string(small(rng)) + "/" + std::to_string(small(rng));
    case 3: return "i";
    case 4: return random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1);
    case 5: return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 6: return "(" + random_expr(rng, depth - 1) + ")*" + random_expr(rng, depth - 1);
    case 7: return "[" + random_expr(rng, depth - 1) + ", " + random_expr(rng, depth - 1) + "]";
    default: return "(" + random_expr(rng, depth - 1) + ")^2";
  }
}

Outcome dsl() {
  std::mt19937 rng(2024);
  int round_trips = 0;
  for (int k = 0; k < 100; ++k) {
    const WeylElement e = parse_operator(random_expr(rng, 3), 4);
    if (parse_operator(format_expr(e), 4) == e) ++round_trips;
  }
  const std::vector<std::pair<std::string, std::size_t>> malformed{
      {"z5*d1", 0}, {"[d1, z1", 7}, {"z1 +", 4},     {"z1 * y", 5},   {"z1/d2", 3},
      {"z1/0", 3},  {"d1^-2", 3},   {"1. + z1", 2}, {"z + 1", 1},    {"(z1 + d1", 8}};
  int positions = 0;
  for (const auto& [text, pos] : malformed) {
    try {
      parse_operator(text, 4);
    } catch (const ParseError& e) {
      if (e.position() == pos) ++positions;
    }
  }
  return {round_trips == 100 && positions == 10, std::to_string(round_trips) + "/100 round trips, " +
                                                     std::to_string(positions) + "/10 error positions"};
}

}  // namespace

int main() {
  criterion(1, "symbolic Lie structure (n=4, n=6)", 60, lie_structure);
  criterion(2, "sl2 triple and Jacobson-Morozov uniqueness", 5, sl2_and_jm);
  criterion(3, "dual pair (n=4)", 0, dual_pair_n4);
  criterion(4, "physics identity and Casimir", 0, physics_and_casimir);
  criterion(5, "hydrogen spectrum -kappa^2/(4n^2)", 30, hydrogen_spectrum);
  criterion(6, "degeneracy n^2", 0, degeneracy);
  criterion(7, "lower cone has no bound states", 0, lower_cone);
  criterion(8, "compact generator spectrum 2(k+l+1)", 0, compact_generator);
  criterion(9, "scaling covariance in kappa", 0, scaling);
  criterion(10, "monodromy", 0, monodromy_criterion);
  criterion(11, "eigenfunction residuals and skewness", 0, residuals);
  criterion(12, "DSL round trip and error positions", 0, dsl);
  std::printf("%d/12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
