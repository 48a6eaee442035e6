#include "conequant/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "conequant/dsl.hpp"
#include "conequant/radial.hpp"
#include "conequant/sl2_pencil.hpp"
#include "conequant/spectral.hpp"

namespace conequant {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

ojson num(double x) { return std::isfinite(x) ? ojson(round15(x)) : ojson(nullptr); }

std::string count_detail(std::size_t passed, std::size_t total, const std::string& what) {
  return std::to_string(passed) + "/" + std::to_string(total) + " " + what;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Scalar parse_rational(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw UsageError("empty number");
  const bool negative = t[0] == '-';
  const std::string body = (t[0] == '-' || t[0] == '+') ? t.substr(1) : t;
  mpq_class q;
  try {
    const auto dot = body.find('.');
    if (dot != std::string::npos) {
      const std::string whole = body.substr(0, dot);
      const std::string frac = body.substr(dot + 1);
      if ((whole + frac).empty() || (whole + frac).find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad decimal");
      mpz_class den = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
      q = mpq_class(mpz_class((whole.empty() ? "0" : whole) + frac), den);
    } else {
      if (body.empty() || body.find_first_not_of("0123456789/") != std::string::npos)
        throw std::invalid_argument("bad rational");
      q = mpq_class(body);
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    }
  } catch (const std::invalid_argument&) {
    throw UsageError("not a rational number: '" + token + "'");
  }
  q.canonicalize();
  return Scalar(negative ? mpq_class(-q) : q);
}

FormSpec read_form_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open form file '" + path + "'");
  std::vector<Vector> rows;
  std::optional<Vector> w;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tok;
    Vector row;
    bool is_w = false;
    while (ss >> tok) {
      if (row.empty() && !is_w && tok == "w") {
        is_w = true;
        continue;
      }
      row.push_back(parse_rational(tok));
    }
    if (is_w) {
      if (w) throw UsageError("form file: more than one 'w' line");
      w = row;
    } else if (!row.empty()) {
      rows.push_back(row);
    }
  }
  if (rows.empty()) throw UsageError("form file: no matrix rows");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw UsageError("form file: matrix must be square");
  if (w && w->size() != rows.size()) throw UsageError("form file: w has the wrong length");
  return {ExactMatrix::from_rows(rows), w};
}

namespace {

using CheckFn = std::function<std::pair<bool, std::string>()>;

void run_check(Report& r, const std::string& id, const std::string& anchor, const CheckFn& fn) {
  try {
    auto [ok, detail] = fn();
    r.add_check(id, anchor, ok, detail);
  } catch (const std::exception& e) {
    r.add_check(id, anchor, false, std::string("exception: ") + e.what());
  }
}

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = Scalar(1);
  return v;
}

std::vector<ExactMatrix> sample_skew(std::size_t n) {
  std::vector<ExactMatrix> out;
  for (int s = 0; s < 2; ++s) {
    ExactMatrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const long v = static_cast<long>((i + 2 * j + 3 * static_cast<std::size_t>(s)) % 5) - 2;
        k(i, j) = Scalar::rational(v, 3 + s);
        k(j, i) = -k(i, j);
      }
    out.push_back(k);
  }
  return out;
}

}  // namespace

Report verify_suite(const Plqs& plqs) {
  const std::size_t n = plqs.dim();
  const QuadraticForm& form = plqs.form;
  Report r("verify");
  r.set_config("dim", n);
  ojson gram = ojson::array();
  for (const auto& row : form.gram().to_rows()) {
    ojson jr = ojson::array();
    for (const auto& c : row) jr.push_back(c.to_string());
    gram.push_back(jr);
  }
  r.set_config("form", gram);
  ojson wj = ojson::array();
  for (const auto& c : plqs.w) wj.push_back(c.to_string());
  r.set_config("w", wj);

  std::optional<ConeLieAlgebra> algebra;
  run_check(r, "spanning_set", "the spanning set of s~ consists of restrictable operators", [&] {
    algebra.emplace(form);
    const std::size_t expected = n * (n + 3) / 2 + 2;
    return std::pair(algebra->size() == expected, std::to_string(algebra->size()) +
                                                      " elements preserve (Q); brackets close in the span");
  });
  if (!algebra) return r;
  const auto& sc = algebra->structure();
  const SoReport so = verify_so_structure(*algebra);

  r.add_check("dim_s", "s = [s~, s~] is isomorphic to so(n+2, C)", so.dim_s == so.expected_dim_s,
              "dim s = " + std::to_string(so.dim_s) + " (expected " + std::to_string(so.expected_dim_s) + ")");
  r.add_check("jacobi", "Jacobi identity on the spanning set", so.jacobi_passed == so.jacobi_triples,
              "Jacobi: " + std::to_string(so.jacobi_passed) + "/" + std::to_string(so.jacobi_triples) + " triples" +
                  (so.jacobi_first_failure.empty() ? "" : "; first failure " + so.jacobi_first_failure));
  r.add_check("antisymmetry", "structure constants are antisymmetric", so.antisymmetric,
              so.antisymmetric ? "c_ij^k = -c_ji^k" : "antisymmetry violated");
  r.add_check("killing_nondegenerate", "s is semisimple", so.killing_nondegenerate,
              so.killing_nondegenerate ? "Killing form of s has full rank" : "Killing form degenerate");
  {
    const std::vector<std::size_t> expected{n, n * (n - 1) / 2 + 2, n};
    r.add_check("graded_pieces", "s~ = D^{0,1} + D^{1,0} + D^{2,-1} with dimensions (n, n(n-1)/2 + 2, n)",
                so.graded_homogeneous && so.graded_dims == expected,
                "weights 1/0/-1: " + std::to_string(so.graded_dims[0]) + "/" + std::to_string(so.graded_dims[1]) +
                    "/" + std::to_string(so.graded_dims[2]));
  }
  if (so.real_killing_inertia) {
    const auto& in = *so.real_killing_inertia;
    const bool ok = in.positive == 2 * n && in.negative == n * (n - 1) / 2 + 1;
    r.add_check("killing_signature", "the real form s(R) is so(n, 2)", ok,
                std::to_string(in.positive) + " positive, " + std::to_string(in.negative) + " negative");
  }

  std::vector<Vector> vectors;
  for (std::size_t i = 0; i < n; ++i) vectors.push_back(unit(n, i));
  vectors.push_back(plqs.pointed_vector());
  {
    Vector mixed(n);
    for (std::size_t i = 0; i < n; ++i) mixed[i] = Scalar::rational(static_cast<long>(i) + 1, 2);
    vectors.push_back(mixed);
  }
  run_check(r, "commutation_relations", "bracket relations among tau(u), L_{u,v}, h, Psi(tau(v)), 1", [&] {
    const RelationReport rel = verify_commutation_relations(form, vectors);
    return std::pair(rel.ok(), count_detail(rel.passed, rel.checked, "relations") +
                                   (rel.first_failure.empty() ? "" : "; first failure " + rel.first_failure));
  });
  run_check(r, "phi_psi", "Phi o Psi = (2 - n) id on V*", [&] {
    std::vector<Vector> covectors;
    for (const auto& v : vectors) covectors.push_back(form.gram().apply(v));
    covectors.push_back(plqs.w);
    const RelationReport rel = verify_phi_psi(form, covectors);
    return std::pair(rel.ok(), count_detail(rel.passed, rel.checked, "covectors"));
  });
  run_check(r, "phi_equivariance", "Phi commutes with the orthogonal group of Q", [&] {
    std::size_t passed = 0;
    std::size_t total = 0;
    for (const auto& k : sample_skew(n)) {
      const ExactMatrix g = cayley_isometry(form, k);
      for (const auto& b : algebra->basis()) {
        ++total;
        if (cone_equal(phi_map(form, b.realization.linear_change(g)), phi_map(form, b.realization).linear_change(g),
                       form))
          ++passed;
      }
    }
    return std::pair(passed == total, count_detail(passed, total, "basis elements under 2 rational isometries"));
  });
  run_check(r, "sl2_triple", "e = i w, h, f = i Psi(w) satisfy [e,f] = h, [h,e] = 2e, [h,f] = -2f", [&] {
    sl2_triple(plqs);
    return std::pair(true, std::string("[e,f] = h, [h,e] = 2e, [h,f] = -2f on the cone"));
  });
  run_check(r, "jacobson_morozov", "f is the unique x in s with [h,x] = -2x and [e,x] = h", [&] {
    const JmResult jm = jacobson_morozov(plqs, *algebra);
    std::string d = !jm.consistent ? "system inconsistent"
                    : jm.unique()  ? std::string("unique solution") + (jm.equals_f ? ", equal to f" : ", not f")
                                   : "solution space of dimension " + std::to_string(jm.free_dimension);
    return std::pair(jm.unique() && jm.equals_f, d);
  });
  run_check(r, "dual_pair", "k_w = so(v_w^perp) and l_w = sl2 are mutual centralizers in s", [&] {
    const DualPairResult dp = dual_pair(plqs, *algebra);
    return std::pair(dp.ok(n), "dim k_w = " + std::to_string(dp.k_basis.size()) + ", dim l_w = " +
                                   std::to_string(dp.l_basis.size()) + (dp.l_equals_sl2 ? ", l_w = span{e,h,f}" : "") +
                                   (dp.mutual ? ", mutual" : ", not mutual") +
                                   (n == 3 ? "; k_w is abelian here, so its centralizer contains k_w itself" : ""));
  });
  run_check(r, "star", "the star is an antilinear anti-involution of s~", [&] {
    const std::size_t m = algebra->size();
    std::size_t passed = 0;
    std::size_t total = 0;
    for (std::size_t a = 0; a < m; ++a) {
      const Vector x = unit(m, a);
      ++total;
      if (star(*algebra, star(*algebra, x)) == x) ++passed;
      for (std::size_t b = a + 1; b < m; ++b) {
        const Vector y = unit(m, b);
        ++total;
        if (star(*algebra, sc.bracket(x, y)) == sc.bracket(star(*algebra, y), star(*algebra, x))) ++passed;
      }
    }
    return std::pair(passed == total, count_detail(passed, total, "involution and bracket-reversal identities"));
  });
  run_check(r, "cayley", "multiplication by i^l maps s*(R) = {i tau, L, h, i Psi} onto s(R) as Lie algebras", [&] {
    const std::size_t m = algebra->size();
    std::vector<Vector> real_star;
    bool fixed = true;
    bool onto = true;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      Vector x = unit(m, k);
      if (algebra->basis()[k].weight() != 0) x[k] = Scalar::i();
      Vector neg_star = star(*algebra, x);
      for (auto& c : neg_star) c = -c;
      if (!(neg_star == x)) fixed = false;
      const Vector fx = cayley(*algebra, x);
      if (!(fx[k] == Scalar(1) || fx[k] == Scalar(-1))) onto = false;
      real_star.push_back(x);
    }
    std::size_t passed = 0;
    std::size_t total = 0;
    for (std::size_t a = 0; a < real_star.size(); ++a)
      for (std::size_t b = a + 1; b < real_star.size(); ++b) {
        ++total;
        const Vector lhs = cayley(*algebra, sc.bracket(real_star[a], real_star[b]));
        const Vector rhs = sc.bracket(cayley(*algebra, real_star[a]), cayley(*algebra, real_star[b]));
        if (lhs == rhs) ++passed;
      }
    return std::pair(fixed && onto && passed == total,
                     count_detail(passed, total, "brackets preserved") + (fixed ? "" : "; basis not in s*(R)") +
                         (onto ? "" : "; image not the s(R) basis"));
  });
  run_check(r, "schrodinger_family", "S = kappa - i(lambda e + f) = kappa + lambda w + Psi(w)", [&] {
    const Scalar kappa(1);
    const Scalar lambda = Scalar::rational(-1, 4);
    const WeylElement s = schrodinger_element(plqs, kappa, lambda);
    const bool sl2 = sl2_decompose(plqs, s) == schrodinger_combination(kappa, lambda);
    std::vector<std::pair<int, int>> grades;
    for (const auto& p : bigrade(s)) grades.emplace_back(p.order, p.weight);
    const std::vector<std::pair<int, int>> expected{{2, -1}, {0, 0}, {0, 1}};
    return std::pair(sl2 && grades == expected,
                     std::string("bigrades {(2,-1), (0,0), (0,1)}") + (sl2 ? ", sl2 coordinates match" : ""));
  });

  run_check(r, "physics_identity", "the radial S_kappa(lambda) equals r(Delta + kappa/r + lambda)", [&] {
    int passed = 0;
    for (int ell = 0; ell <= 10; ++ell) passed += physics_identity(ell) ? 1 : 0;
    return std::pair(passed == 11, count_detail(static_cast<std::size_t>(passed), 11, "values of l <= 10"));
  });
  run_check(r, "casimir", "h^2/2 + ef + fe acts by 2l(l+1) on H_l", [&] {
    int passed = 0;
    for (int ell = 0; ell <= 10; ++ell)
      if (casimir_scalar(ell) == Laurent(Scalar(2L * ell * (ell + 1)))) ++passed;
    return std::pair(passed == 11, count_detail(static_cast<std::size_t>(passed), 11, "values of l <= 10"));
  });
  run_check(r, "radial_homomorphism", "the radial model is a representation of sl2", [&] {
    const Scalar z(0);
    const Scalar o(1);
    const std::vector<Sl2Combination> gens{{z, o, z, z}, {z, z, o, z}, {z, z, z, o}};
    std::size_t passed = 0;
    std::size_t total = 0;
    for (int ell = 0; ell <= 3; ++ell)
      for (const auto& x : gens)
        for (const auto& y : gens) {
          ++total;
          const IsotypicParams p{ell, Cone::upper};
          if (isotypic_restrict(sl2_bracket(x, y), p) ==
              commutator(isotypic_restrict(x, p), isotypic_restrict(y, p)))
            ++passed;
        }
    return std::pair(passed == total, count_detail(passed, total, "brackets"));
  });
  run_check(r, "lower_cone", "t -> -t maps the lower-cone operator to the upper one with kappa -> -kappa", [&] {
    bool ok = true;
    for (int ell = 0; ell <= 3; ++ell) {
      const RadialOperator up = isotypic_restrict(schrodinger_combination(Scalar(1), Scalar(2)), {ell, Cone::upper});
      const RadialOperator flipped =
          isotypic_restrict(schrodinger_combination(Scalar(-1), Scalar(2)), {ell, Cone::upper});
      ok = ok && lower_cone_transform(up) == flipped && lower_cone_transform(lower_cone_transform(up)) == up;
    }
    return std::pair(ok, std::string("kappa sign flip and involution for l <= 3"));
  });
  run_check(r, "power_solutions", "t^{-1 + i/(2 nu)} solves the conjugated operator 1 + i nu H", [&] {
    bool ok = true;
    for (const Scalar& nu : {Scalar::rational(1, 2), Scalar(1), Scalar(3)}) ok = ok && power_solution_check(nu, 0);
    const bool control = !power_solution_check(Scalar(1), 0, Scalar(-1));
    return std::pair(ok && control, std::string("nu in {1/2, 1, 3}; wrong exponent -1 rejected"));
  });
  return r;
}

namespace {

struct Options {
  std::string format;
  std::string output;
  std::string config;
  // verify / eval
  std::size_t dim = 0;
  std::string form;
  // spectrum
  double kappa = 1.0;
  int ell_max = 0;
  int nmax = 1;
  std::size_t size = 0;
  std::string cone = "upper";
  std::optional<double> beta;
  // monodromy / classify
  std::string lambda;
  std::string scan;
  // eval
  std::string expr;
  bool grade = false;
  bool restrictable = false;
};

void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.to_json().dump(2) << "\n";
  } else {
    out << r.to_text();
  }
}

int finish(const Report& r) { return r.all_pass() ? exit_ok : exit_check_failed; }

double to_double(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    throw UsageError("invalid number for " + what + ": '" + s + "'");
  return v;
}

int cmd_verify(const Options& o, std::ostream& out) {
  Plqs plqs = [&] {
    if (o.form.empty()) {
      if (o.dim < 3) throw UsageError("verify: --dim must be at least 3");
      return Plqs::standard(o.dim);
    }
    FormSpec f = read_form_file(o.form);
    const std::size_t n = f.gram.rows();
    if (o.dim != 0 && o.dim != n) throw UsageError("verify: --dim does not match the form file");
    Vector w = f.w ? *f.w : Vector(n);
    if (!f.w) w[n - 1] = Scalar(1);
    return Plqs(QuadraticForm(f.gram), w);
  }();
  Report r = verify_suite(plqs);
  if (!o.form.empty()) r.set_config("form_file", o.form);
  emit(r, o.format.empty() ? "json" : o.format, out);
  return finish(r);
}

void write_spectrum_csv(const SpectrumReport& s, std::ostream& out) {
  out << "n,ell,lambda,expected,rel_err,residual,N,beta\n";
  for (const auto& row : s.rows)
    out << row.n << "," << row.ell << "," << fmt(row.lambda) << "," << fmt(row.expected) << "," << fmt(row.rel_err)
        << "," << fmt(row.residual) << "," << row.size << "," << fmt(row.beta) << "\n";
  out << "\nn,degeneracy\n";
  for (const auto& [n, d] : s.degeneracy) out << n << "," << d << "\n";
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  if (!(o.kappa > 0.0)) throw UsageError("spectrum: --kappa must be positive");
  if (o.size < 1) throw UsageError("spectrum: --size must be at least 1");
  if (o.nmax < 1) throw UsageError("spectrum: --nmax must be at least 1");
  if (o.ell_max < 0) throw UsageError("spectrum: --ell-max must be nonnegative");
  if (o.cone != "upper" && o.cone != "lower") throw UsageError("spectrum: --cone must be upper or lower");
  if (o.beta && !(*o.beta > 0.0)) throw UsageError("spectrum: --beta must be positive");
  const std::string format = o.format.empty() ? "csv" : o.format;
  Report r("spectrum");
  r.set_config("kappa", num(o.kappa));
  r.set_config("ell_max", o.ell_max);
  r.set_config("nmax", o.nmax);
  r.set_config("size", o.size);
  r.set_config("cone", o.cone);
  const double beta = o.beta.value_or(o.kappa);
  r.set_config("beta", num(beta));

  if (o.cone == "lower") {
    ojson& rows = r.table("lower_cone");
    rows = ojson::array();
    std::size_t negatives = 0;
    std::vector<std::pair<int, double>> csv_rows;
    for (int ell = 0; ell <= o.ell_max; ++ell) {
      const LowerConeResult lc = lower_cone_bound_states(o.kappa, ell, o.size, beta);
      negatives += lc.negative.size();
      ojson row;
      row["ell"] = ell;
      row["negative_count"] = lc.negative.size();
      row["min_positive"] = num(lc.min_positive);
      rows.push_back(row);
      csv_rows.emplace_back(ell, lc.min_positive);
    }
    r.add_check("lower_cone_spectrum", "the lower-cone spectrum is (0, inf): no bound states", negatives == 0,
                std::to_string(negatives) + " eigenvalues below -1e-10 for l <= " + std::to_string(o.ell_max));
    if (format == "csv") {
      out << "n,ell,lambda,expected,rel_err,residual,N,beta\n";
      for (const auto& [ell, lmin] : csv_rows)
        out << "," << ell << "," << fmt(lmin) << ",,,," << o.size << "," << fmt(beta) << "\n";
    } else {
      emit(r, format, out);
    }
    return finish(r);
  }

  const SpectrumReport s = degeneracy_table(o.kappa, o.nmax, o.size, beta, o.ell_max);
  std::size_t found = 0;
  for (const auto& row : s.rows) found += row.found ? 1 : 0;
  r.add_check("levels", "bound states at -kappa^2/(4n^2) for every l < n", s.all_found(),
              count_detail(found, s.rows.size(), "levels within tolerance"));
  std::size_t absent = 0;
  for (const auto& a : s.absences) absent += a.absent ? 1 : 0;
  r.add_check("absence", "level n does not occur for l >= n", s.all_absent(),
              count_detail(absent, s.absences.size(), "(n, l >= n) pairs without the level"));
  std::string deg;
  for (const auto& [n, d] : s.degeneracy) deg += (deg.empty() ? "" : ", ") + std::to_string(n) + ":" + std::to_string(d);
  r.add_check("degeneracy", "level n has multiplicity sum_{l<n} (2l+1) = n^2", s.degeneracy_ok(), deg);
  ojson& levels = r.table("levels");
  levels = ojson::array();
  for (const auto& row : s.rows) {
    ojson j;
    j["n"] = row.n;
    j["ell"] = row.ell;
    j["lambda"] = num(row.lambda);
    j["expected"] = num(row.expected);
    j["rel_err"] = num(row.rel_err);
    j["residual"] = num(row.residual);
    j["N"] = row.size;
    j["beta"] = num(row.beta);
    levels.push_back(j);
  }
  ojson& dj = r.table("degeneracy");
  dj = ojson::array();
  for (const auto& [n, d] : s.degeneracy) dj.push_back({{"n", n}, {"degeneracy", d}});
  if (format == "csv") {
    write_spectrum_csv(s, out);
  } else {
    emit(r, format, out);
  }
  return finish(r);
}

int cmd_monodromy(const Options& o, std::ostream& out) {
  if (o.lambda.empty() == o.scan.empty()) throw UsageError("monodromy: give exactly one of --lambda and --scan");
  Report r("monodromy");
  const std::string format = o.format.empty() ? "json" : o.format;
  if (!o.lambda.empty()) {
    const auto comma = o.lambda.find(',');
    const double re = to_double(o.lambda.substr(0, comma), "--lambda");
    const double im = comma == std::string::npos ? 0.0 : to_double(o.lambda.substr(comma + 1), "--lambda");
    r.set_config("lambda", {num(re), num(im)});
    const MonodromyResult m = monodromy({re, im});
    const std::complex<double> closed = monodromy_closed_form({re, im});
    const double rel = std::abs(m.integral - closed) / std::abs(closed);
    r.add_check("closed_form", "int_0^{2pi} d theta / (cos^2 - lambda sin^2) = 2 pi / sqrt(-lambda)", rel < 1e-10,
                "relative error " + fmt(rel));
    const double direct = std::abs(m.m);
    const double mod_rel = std::abs(m.modulus - direct) / direct;
    r.add_check("modulus_formula", "|M| = exp(Im(lambda) int sin^2 / |c_lambda|^2)", m.converged && mod_rel < 1e-9,
                "formula " + fmt(m.modulus) + " vs |exp(-iI)| " + fmt(direct));
    ojson& t = r.table("monodromy");
    t["integral"] = {num(m.integral.real()), num(m.integral.imag())};
    t["M"] = {num(m.m.real()), num(m.m.imag())};
    t["abs_M"] = num(m.modulus);
    t["deviation_from_1"] = num(std::abs(m.m - 1.0));
    t["panels"] = m.panels;
    emit(r, format, out);
    return finish(r);
  }
  double a = 0.0;
  double b = 0.0;
  double step = 0.0;
  {
    const auto c1 = o.scan.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : o.scan.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("monodromy: --scan expects A:B:STEP");
    a = to_double(o.scan.substr(0, c1), "--scan");
    b = to_double(o.scan.substr(c1 + 1, c2 - c1 - 1), "--scan");
    step = to_double(o.scan.substr(c2 + 1), "--scan");
  }
  if (!(step > 0.0) || !(a <= b) || !(b < 0.0)) throw UsageError("monodromy: --scan needs A <= B < 0 and STEP > 0");
  r.set_config("scan", {num(a), num(b), num(step)});
  const auto scan = monodromy_scan(a, b, step);
  const ScanVerdict v = check_scan(scan, 1.0, a, b);
  auto list = [](const std::vector<double>& xs) {
    ojson j = ojson::array();
    for (double x : xs) j.push_back(num(x));
    return j;
  };
  r.add_check("unit_monodromy_only_at_candidates", "M = 1 on the negative axis only at -1/m^2",
              v.stray_hits.empty() && v.missed_on_grid.empty(),
              std::to_string(v.hits.size()) + " grid hits, " + std::to_string(v.stray_hits.size()) +
                  " away from -1/m^2, " + std::to_string(v.missed_on_grid.size()) + " candidates missed");
  r.add_check("unit_monodromy_at_candidates", "M(-1/m^2) = 1", v.candidates_without_unit_monodromy.empty(),
              count_detail(v.candidates_in_range.size() - v.candidates_without_unit_monodromy.size(),
                           v.candidates_in_range.size(), "candidates in range"));
  ojson& t = r.table("scan");
  t["grid_points"] = v.grid_points;
  t["hits"] = list(v.hits);
  t["candidates_in_range"] = list(v.candidates_in_range);
  t["stray_hits"] = list(v.stray_hits);
  if (format == "csv") {
    out << "lambda,deviation\n";
    for (const auto& p : scan) out << fmt(p.lambda) << "," << fmt(p.deviation) << "\n";
  } else {
    emit(r, format, out);
  }
  return finish(r);
}

int cmd_classify(const Options& o, std::ostream& out) {
  const double lambda = to_double(o.lambda, "--lambda");
  const Conjugation c = classify_and_conjugate(lambda);
  Report r("classify");
  r.set_config("lambda", num(lambda));
  r.add_check("conjugator", "A in SL2(R) conjugates lambda E + F to its normal form", true,
              "det A = 1, |A X A^-1 - normal form| = " + fmt(c.error));
  ojson& t = r.table("classification");
  t["class"] = to_string(c.kind);
  t["nu"] = num(c.nu);
  auto mat = [](const Mat2& m) {
    ojson j = ojson::array();
    for (const auto& row : m) j.push_back({num(row[0].real()), num(row[1].real())});
    return j;
  };
  t["A"] = mat(c.a);
  t["normal_form"] = mat(c.normal_form);
  const std::string format = o.format.empty() ? "text" : o.format;
  if (format == "text") {
    out << to_string(c.kind);
    if (c.kind != ConjugacyKind::nilpotent) out << ", nu=" << fmt(c.nu);
    out << "\n";
  } else {
    emit(r, format, out);
  }
  return finish(r);
}

int cmd_eval(const Options& o, std::ostream& out) {
  if (o.dim < 1) throw UsageError("eval: --dim must be at least 1");
  const WeylElement e = parse_operator(o.expr, o.dim);
  Report r("eval");
  r.set_config("dim", o.dim);
  r.set_config("expr", o.expr);
  ojson& t = r.table("result");
  t["normal_form"] = format_expr(e);
  t["order"] = e.order();
  const std::string format = o.format.empty() ? "text" : o.format;
  std::string text = format_expr(e) + "\n";
  if (o.grade) {
    ojson pieces = ojson::array();
    for (const auto& p : bigrade(e)) {
      pieces.push_back({{"k", p.order}, {"l", p.weight}, {"expr", format_expr(p.element)}});
      text += "(" + std::to_string(p.order) + "," + std::to_string(p.weight) + "): " + format_expr(p.element) + "\n";
    }
    t["bigrade"] = pieces;
  }
  if (o.restrictable) {
    if (o.dim < 3) throw UsageError("eval: --restrictable needs --dim >= 3");
    const bool ok = preserves_ideal(e, QuadraticForm::standard_lorentzian(o.dim));
    t["restrictable"] = ok;
    text += std::string("restrictable: ") + (ok ? "yes" : "no") + "\n";
  }
  if (format == "text") {
    out << text;
  } else {
    emit(r, format, out);
  }
  return exit_ok;
}

void apply_thread_cap() {
  const char* env = std::getenv("CONEQUANT_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw UsageError("CONEQUANT_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(n));
}

// Turns config entries into flags placed right after the subcommand, so
// that flags given on the command line (which come later) take precedence.
std::vector<std::string> inject_config(const std::vector<std::string>& args,
                                       const std::vector<std::string>& subcommands) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
  }
  if (path.empty()) return args;
  const auto entries = read_config_file(path);
  const auto sub = std::find_first_of(args.begin(), args.end(), subcommands.begin(), subcommands.end());
  if (sub == args.end()) return args;
  const auto pos = static_cast<std::size_t>(sub - args.begin()) + 1;
  static const std::set<std::string> known{"format", "output", "dim",   "form",   "kappa", "ell_max",
                                           "nmax",   "size",   "cone",  "beta",   "lambda", "scan",
                                           "expr",   "grade",  "restrictable"};
  std::vector<std::string> injected;
  for (const auto& [key, value] : entries) {
    if (!known.count(key)) throw UsageError("unknown config key '" + key + "'");
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (key == "expr") {
      continue;
    }
    if (key == "grade" || key == "restrictable") {
      if (value == "true" || value == "1") injected.push_back(flag);
      continue;
    }
    injected.push_back(flag + "=" + value);
  }
  std::vector<std::string> out(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(pos), args.end());
  // A positional cannot be overridden, so the file's expression is only a fallback.
  if (entries.count("expr") && *sub == "eval") out.push_back("--expr-default=" + entries.at("expr"));
  return out;
}

}  // namespace

int run_command(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"conequant: the algebra of differential operators on a quadratic cone and its hydrogen spectrum",
               "conequant"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output", o.output, "Write the report to this file instead of stdout");
  app.add_option("--config", o.config, "Flat key=value file; command-line flags override it");

  auto* verify = app.add_subcommand("verify", "Run the symbolic verification suite");
  verify->add_option("--dim", o.dim, "Dimension n of V");
  verify->add_option("--form", o.form, "Quadratic form file (rows of rationals, optional 'w' line)");

  auto* spectrum = app.add_subcommand("spectrum", "Bound-state spectrum and degeneracies");
  spectrum->add_option("--kappa", o.kappa, "Coupling kappa")->required();
  spectrum->add_option("--ell-max", o.ell_max, "Largest angular momentum l")->required();
  spectrum->add_option("--nmax", o.nmax, "Largest principal number n")->required();
  spectrum->add_option("--size", o.size, "Basis size N")->required();
  spectrum->add_option("--cone", o.cone, "upper or lower half cone");
  spectrum->add_option("--beta", o.beta, "Basis scale (default kappa)");

  auto* mono = app.add_subcommand("monodromy", "Monodromy of the circle model");
  mono->add_option("--lambda", o.lambda, "RE[,IM]");
  mono->add_option("--scan", o.scan, "A:B:STEP grid on the negative axis");

  auto* classify = app.add_subcommand("classify", "Conjugacy class of lambda E + F in sl2(R)");
  classify->add_option("--lambda", o.lambda, "Real lambda")->required();

  auto* eval = app.add_subcommand("eval", "Normal form of an operator expression");
  eval->add_option("--dim", o.dim, "Dimension n")->required();
  std::string expr_default;
  eval->add_option("expr", o.expr, "Expression, e.g. \"[d1, z1] + z1*d2\"");
  eval->add_option("--expr-default", expr_default)->group("");
  eval->add_flag("--grade", o.grade, "Print the bigraded pieces");
  eval->add_flag("--restrictable", o.restrictable, "Test whether the operator preserves (Q) for the standard form");

  try {
    apply_thread_cap();
    const std::vector<std::string> args =
        inject_config(raw_args, {"verify", "spectrum", "monodromy", "classify", "eval"});
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (o.expr.empty()) o.expr = expr_default;
    if (eval->parsed() && o.expr.empty()) throw UsageError("eval: expression required");

    std::ofstream file;
    if (!o.output.empty()) {
      file.open(o.output);
      if (!file) throw UsageError("cannot open output file '" + o.output + "'");
    }
    std::ostream& sink = o.output.empty() ? out : file;
    if (verify->parsed()) return cmd_verify(o, sink);
    if (spectrum->parsed()) return cmd_spectrum(o, sink);
    if (mono->parsed()) return cmd_monodromy(o, sink);
    if (classify->parsed()) return cmd_classify(o, sink);
    return cmd_eval(o, sink);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << "\n";
    return exit_check_failed;
  }
}

}  // namespace conequant
