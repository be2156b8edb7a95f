#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "h10ff/compiler.hpp"
#include "h10ff/integrality.hpp"
#include "h10ff/riemann_roch.hpp"
#include "h10ff/solver.hpp"
#include "h10ff/templates.hpp"
#include "h10ff/witness.hpp"
#include "test_util.hpp"

using namespace h10ff;

namespace {

/// Collects failure notes for one criterion.
struct Result {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

RatFunc embed(const RatFunc& x, const Field* E) {
  return RatFunc(Poly(E, x.num().coeffs()), Poly(E, x.den().coeffs()));
}

Result artin_schreier_identity() {
  Result r;
  std::mt19937_64 rng(1);
  for (int p : {2, 3, 5}) {
    const Field* f = Field::get(p, 1);
    long long pa = ipow(p, compute_constants(p, 1).a);
    for (int s = 0; s <= 3; ++s)
      for (int i = 0; i < 20; ++i) {
        RatFunc x = test::random_ratfunc(f, rng, 3);
        RatFunc v = artin_schreier_witness(x, pa, s);
        r.require(v.pow(pa) - v == x.pow(ipow(pa, s)) - x,
                  "p=" + std::to_string(p) + " s=" + std::to_string(s) + " x=" + x.to_string());
      }
  }
  return r;
}

Result witness_satisfaction() {
  Result r;
  for (int p : {2, 3}) {
    const Field* f = Field::get(p, 4);
    ConstantSet cs = build_constant_set(f, 2, p == 3 ? 4 : 2);
    int a = compute_constants(p, 1).a;
    EquationSystem pk = gen_pk_power_of_t_system(p, cs, compute_constants(p, 1), true);
    const Field* fp = Field::get(p, 1);
    for (int s = 0; s <= 2; ++s) {
      std::string tag = " p=" + std::to_string(p) + " s=" + std::to_string(s);
      r.require(verify_assignment(pk, build_pk_power_witness(p, s, cs, pk)).ok(), "pk power" + tag);
      EquationSystem d = gen_d_system(p, a, s, cs);
      RatFunc t = RatFunc::t(f);
      for (const RatFunc& u : {t, t + RatFunc::from_int(f, 1)})
        r.require(verify_assignment(d, build_d_system_witness(u, p, a, s, cs, d)).ok(), "D system u=" + u.to_string() + tag);
      RatFunc x = RatFunc::parse(fp, "(t^2 + 1)/(t + 1)");
      if (p == 2)
        r.require(verify_assignment(gen_e2_system(fp, s), build_e2_witness(x, s)).ok(), "E2" + tag);
      else
        r.require(verify_assignment(gen_e_system(fp, s), build_e_witness(x, s)).ok(), "E" + tag);
    }
  }
  return r;
}

Result converse_sweep() {
  Result r;
  PkSweepReport rep = check_pk_power_theorem(3, 2, 4);
  const Field* f = Field::get(3, 1);
  r.require(rep.ok(), "violations: " + rep.to_json()["violations"].dump());
  r.require(rep.witnessed.size() == 1 && rep.witnessed[0] == RatFunc::t(f), "witnessed set is not {t}");
  r.require(rep.refuted + rep.witnessed.size() == rep.swept, "sweep incomplete");
  for (int s = 0; s <= 1; ++s) {
    Assignment w = build_base_pair_witness(f, s);
    r.require(w.at("w") == RatFunc::t_pow(f, ipow(3, s)), "witness w is not t^(3^s)");
    r.require(verify_assignment(gen_base_pair_system(f), w).ok(), "base pair witness s=" + std::to_string(s));
  }
  if (r.ok) r.note = "swept " + std::to_string(rep.swept) + ", refuted <= 4: " + std::to_string(rep.refuted);
  return r;
}

Result riemann_roch_dimension() {
  Result r;
  std::mt19937_64 rng(4);
  const Field* f = Field::get(5, 1);
  int checked = 0;
  while (checked < 50) {
    Divisor D = test::random_divisor(f, rng);
    int deg = divisor_degree(D);
    if (deg < -3 || deg > 6) continue;
    ++checked;
    auto basis = riemann_roch_basis(f, D);
    r.require(static_cast<int>(basis.size()) == std::max(0, deg + 1), "dimension at deg " + std::to_string(deg));
    for (auto& y : basis)
      for (auto& [P, m] : D) r.require(ord_at(y, P) >= -m, "order constraint at " + P.to_string());
    r.require(test::rank_of(f, basis) == static_cast<int>(basis.size()), "basis is dependent");
  }
  return r;
}

Result derivation_inequalities() {
  Result r;
  std::mt19937_64 rng(5);
  const Field* f = Field::get(3, 1);
  int checked = 0;
  while (checked < 100) {
    RatFunc x = test::random_ratfunc(f, rng, 5);
    if (x.is_zero()) continue;
    ++checked;
    RatFunc dx = x.derivative();
    Divisor d = divisor_of(x);
    d[Place::infinity()] += 0;
    int sum = 0;
    for (auto& [P, m] : d) {
      int dt = local_derivation_order(P);
      sum += dt * P.degree();
      if (dx.is_zero()) continue;
      int o = ord_at(x, P), od = ord_at(dx, P);
      int lower = o >= 0 ? std::max(0, o - 1) - dt : o - 1 - dt;
      r.require(od >= lower, "x=" + x.to_string() + " at " + P.to_string());
    }
    r.require(sum == -2, "sum of d_t deg is " + std::to_string(sum));
  }
  return r;
}

std::vector<RatFunc> sweep_h2() {
  std::vector<RatFunc> out;
  for (auto& w : enumerate_ratfuncs(Field::get(3, 1), 2))
    if (!w.is_zero()) out.push_back(w);
  return out;
}

Result h_dichotomy() {
  Result r;
  const Field* f = Field::get(3, 1);
  Place T = Place::finite(Poly::var(f));
  for (auto& w : sweep_h2()) {
    RatFunc h = compute_h(w, 2);
    bool odd = ord_at(h, T) % 2 != 0;
    r.require(odd == (ord_at(w, T) < 0), "dichotomy fails at w=" + w.to_string());
    r.require(pole_obstruction_at_zero_of_t(w, 2) == odd, "obstruction disagrees at w=" + w.to_string());
    // Order of h_w in K(delta)(beta_w): delta^2 = t + 1 ramifies at t + 1
    // and infinity; beta_w^2 = 1/h_w + 1 ramifies where h_w has a zero of
    // odd order among the places left unramified by delta.
    for (auto& [P, m] : divisor_of(h)) {
      if (P == T) continue;
      bool delta_ram = P.is_infinite() || P == Place::finite(Poly::var(f) + Poly::constant(f, 1));
      int e = delta_ram ? 2 : (m > 0 && m % 2 != 0 ? 2 : 1);
      r.require((e * m) % 2 == 0, "odd order away from t at w=" + w.to_string() + ", " + P.to_string());
    }
    for (auto& [P, res] : divisor_mod_q_profile(w, 2))
      if (P != T) r.require(res == 0, "profile nonzero away from t at w=" + w.to_string());
  }
  return r;
}

Result norm_obstruction() {
  Result r;
  TowerSpec ts = make_tower(Field::get(3, 1), 2);
  int n = 0;
  for (auto& w : sweep_h2()) {
    if (!pole_obstruction_at_zero_of_t(w, 2)) continue;
    ++n;
    NormSearchResult s = check_norm_solvable_bruteforce(w, ts, 2);
    r.require(!s.witness.has_value(), "witness found for obstructed w=" + w.to_string());
  }
  if (r.ok) r.note = std::to_string(n) + " obstructed w, no witness <= 2";
  return r;
}

Result norm_form() {
  Result r;
  const Field* f = Field::get(3, 1);
  MultiPoly a0 = MultiPoly::var(f, "a0"), a1 = MultiPoly::var(f, "a1");
  TowerSpec ts = make_tower(f, 2);
  for (const char* wt : {"1/t", "t", "t^2 + 1", "(t + 2)/t^2"}) {
    RatFunc w = RatFunc::parse(f, wt);
    RatFunc c = compute_h(w, 2).inv() + RatFunc::from_int(f, 1);
    NormFormSpec nf = norm_form_of(f, ts.beta_min(w));
    r.require(nf.P == a0 * a0 - MultiPoly(c) * a1 * a1, std::string("q=2 resultant at w=") + wt);
  }
  const Field* f7 = Field::get(7, 1);
  TowerSpec ts3 = make_tower(f7, 3);
  NormFormSpec nf3 = gen_norm_form(ts3);
  const Field* E = Field::get(7, 3);
  Fe alpha = 0;
  for (Fe x = 1; x < E->q() && !alpha; ++x)
    if (E->pow(x, 3) == ts3.a) alpha = x;
  Fe xi = 2;
  std::mt19937_64 rng(8);
  for (int n = 0; n < 25; ++n) {
    std::vector<RatFunc> a;
    for (int i = 0; i < 3; ++i) a.push_back(test::random_ratfunc(f7, rng, 2));
    RatFunc prod = RatFunc::from_int(E, 1);
    for (int j = 0; j < 3; ++j) {
      Fe root = E->mul(E->pow(xi, j), alpha);
      RatFunc s(E);
      for (int i = 0; i < 3; ++i) s += embed(a[static_cast<std::size_t>(i)], E).scale(E->pow(root, i));
      prod *= s;
    }
    RatFunc P = nf3.P.evaluate({{"a0", a[0]}, {"a1", a[1]}, {"a2", a[2]}});
    r.require(embed(P, E) == prod, "q=3 conjugate product");
  }
  std::vector<RatFunc> roots{RatFunc::from_int(f7, 1), RatFunc::from_int(f7, 2), RatFunc::from_int(f7, 4)};
  NormFormSpec split = norm_form_of(f7, poly_from_roots(roots));
  for (int n = 0; n < 20; ++n) {
    RatFunc y = test::random_ratfunc(f7, rng, 3);
    auto a = solve_norm_form_split(y, roots);
    r.require(split.P.evaluate({{"a0", a[0]}, {"a1", a[1]}, {"a2", a[2]}}) == y, "split solve y=" + y.to_string());
  }
  return r;
}

Result compiler_round_trip() {
  Result r;
  const std::vector<std::pair<std::string, int>> formulas = {
      {"x1 + x2 = x3", 3},
      {"x1 |p x2", 2},
      {"x1 |p x2", 3},
      {"x1 |p x2 & x1 + x1 = x2", 2},
      {"x1 + x2 = x3 & x3 = 5", 3},
      {"x1 |p x1", 2},
      {"x1 |p x2 & x2 = 3 & x1 = 2", 2},
      {"a + b = c & a |p c", 3},
      {"x = 2 & x + x = y", 3},
      {"x + y = z & y |p z", 2},
  };
  std::size_t matched = 0, bounded = 0;
  for (auto& [text, p] : formulas) {
    PheidasAST ast = parse_formula(text);
    ModelCheckReport rep = restricted_model_check(ast, p, 6, 2);
    r.require(rep.ok(), text + ": " + rep.to_json()["mismatched"].dump());
    r.require(rep.matched == oracle_solve_z(ast, p, 6), text + ": matched set differs from the oracle");
    r.require(rep.compiled_count == rep.oracle_count, text + ": counts differ");
    matched += rep.matched.size();
    bounded += rep.bounded_only.size();
  }
  if (r.ok) r.note = std::to_string(matched) + " matched, " + std::to_string(bounded) + " rejected bounded only (<= 2)";
  return r;
}

/// Compares the solution set of sys with the zero set of its single
/// combined equation over all assignments with heights <= 1.
void compare_combined(Result& r, const EquationSystem& sys, const std::string& name) {
  MultiPoly single = combine_to_single(sys);
  auto cands = enumerate_ratfuncs(sys.field, 1);
  std::vector<std::size_t> idx(sys.unknowns.size(), 0);
  std::size_t sols = 0;
  for (;;) {
    Assignment a;
    for (std::size_t i = 0; i < idx.size(); ++i) a[sys.unknowns[i]] = cands[idx[i]];
    bool by_system = true;
    for (auto& e : sys.equations) by_system = by_system && e.evaluate(a).is_zero();
    bool by_single = single.evaluate(a).is_zero();
    r.require(by_system == by_single, name + ": disagreement");
    sols += by_system;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == cands.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  r.require(sols > 0 || name == "inconsistent", name + ": no solutions to compare");
}

Result combiner() {
  Result r;
  const Field* f3 = Field::get(3, 1);
  const Field* f2 = Field::get(2, 1);
  compare_combined(r, gen_base_pair_system(f3), "base pair F3");
  compare_combined(r, gen_base_pair_system(f2), "base pair F2");
  auto V = [](const Field* f, const char* n) { return MultiPoly::var(f, n); };
  MultiPoly t = MultiPoly::t(f3), one = MultiPoly::constant(f3, 1);
  EquationSystem s3;
  s3.field = f3;
  s3.unknowns = {"x", "y"};
  s3.equations = {Equation::leaf(V(f3, "x") * V(f3, "y") - t), Equation::leaf(V(f3, "x") - V(f3, "y") * t)};
  compare_combined(r, s3, "xy = t, x = yt");
  EquationSystem s4;
  s4.field = f3;
  s4.unknowns = {"x", "y", "z"};
  s4.equations = {Equation::product({Equation::leaf(V(f3, "x") - t), Equation::leaf(V(f3, "x") - one)}),
                  Equation::leaf(V(f3, "y") * V(f3, "y") - V(f3, "x")), Equation::leaf(V(f3, "z") - V(f3, "x") - V(f3, "y"))};
  compare_combined(r, s4, "disjunction");
  EquationSystem s5;
  s5.field = f2;
  s5.unknowns = {"x", "y", "z"};
  MultiPoly t2 = MultiPoly::t(f2);
  s5.equations = {Equation::leaf(V(f2, "x") * V(f2, "x") + V(f2, "x") - t2 * V(f2, "y")),
                  Equation::leaf(V(f2, "x") * V(f2, "y") - V(f2, "z"))};
  compare_combined(r, s5, "char 2 system");
  return r;
}

Result constants() {
  Result r;
  for (int p : {2, 3, 5, 7, 11, 13})
    for (long long C : {1, 2, 5}) {
      ConstantsRecord rec = compute_constants(p, C);
      long long pa = ipow(p, rec.a);
      long long c1 = -2 + (pa + 1) * (C + 1);
      long long c2n = -1 + (pa + 1) * (C + 1), c2d = pa - 1;
      std::string tag = "p=" + std::to_string(p) + " C=" + std::to_string(C);
      r.require(rec.a == (p == 2 ? 2 : 1), tag + " a");
      r.require(rec.C1 == Rational(c1), tag + " C1");
      r.require(rec.C2 == Rational(c2n, c2d), tag + " C2");
      r.require(rec.C3 == Rational(C * c2d + pa * c1 * c2n, c2d), tag + " C3");
      r.require(rec.C4 == Rational(0), tag + " C4");
      r.require(rec.C5 == Rational(8), tag + " C5");
    }
  ConstantsRecord r3 = compute_constants(3, 1);
  r.require(r3.a == 1 && r3.C1 == Rational(6) && r3.C2 == Rational(7, 2) && r3.C3 == Rational(64) &&
                r3.C4 == Rational(0) && r3.C5 == Rational(8),
            "p=3, C=1 record");
  return r;
}

}  // namespace

int main() {
  const std::vector<std::tuple<int, std::string, double, std::function<Result()>>> criteria = {
      {1, "Artin-Schreier identity", 5, artin_schreier_identity},
      {2, "witness satisfaction", 30, witness_satisfaction},
      {3, "desk-scale converse sweep over F_3", 600, converse_sweep},
      {4, "Riemann-Roch at genus 0", 5, riemann_roch_dimension},
      {5, "derivation inequalities", 5, derivation_inequalities},
      {6, "h_w dichotomy", 60, h_dichotomy},
      {7, "norm obstruction consistency", 300, norm_obstruction},
      {8, "norm form", 10, norm_form},
      {9, "compiler round trip", 120, compiler_round_trip},
      {10, "single-equation combiner", 120, combiner},
      {11, "constants", 1, constants},
  };
  int failed = 0;
  for (auto& [id, name, budget, fn] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res.ok = false;
      res.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget) {
      if (res.ok) res.note = "over time budget";
      res.ok = false;
    }
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (res.ok ? "PASS" : "FAIL") << " " << id << " " << name << " (" << secs << " s, budget "
         << budget << " s)";
    if (!res.note.empty()) line << ": " << res.note;
    std::cout << line.str() << std::endl;
    failed += !res.ok;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << (criteria.size() - static_cast<std::size_t>(failed)) << "/"
            << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
