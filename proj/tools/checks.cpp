#include "checks.hpp"

#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include "h10ff/compiler.hpp"
#include "h10ff/integrality.hpp"
#include "h10ff/riemann_roch.hpp"
#include "h10ff/solver.hpp"
#include "h10ff/templates.hpp"
#include "h10ff/witness.hpp"

namespace h10ff::cli {

namespace {

using Rng = std::mt19937_64;

RatFunc random_ratfunc(const Field* f, Rng& rng, int max_deg) {
  std::uniform_int_distribution<Fe> d(0, f->q() - 1);
  auto poly = [&] {
    std::vector<Fe> c(static_cast<std::size_t>(max_deg) + 1);
    for (auto& x : c) x = d(rng);
    return Poly(f, c);
  };
  Poly n = poly(), m = poly();
  if (m.is_zero()) m = Poly::constant(f, 1);
  return RatFunc(n, m);
}

struct Suite {
  Json checks = Json::array();
  bool ok = true;
  void add(const std::string& name, bool passed, const std::string& detail = {}) {
    Json c = {{"check", name}, {"ok", passed}};
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
    ok = ok && passed;
  }
};

void ff_core_suite(Suite& s, Rng& rng) {
  for (int p : {2, 3, 5}) {
    const Field* f = Field::get(p, 1);
    bool deg0 = true, dp = true, height = true, rr = true;
    for (int i = 0; i < 20; ++i) {
      RatFunc x = random_ratfunc(f, rng, 4);
      if (x.is_zero()) continue;
      deg0 = deg0 && divisor_degree(divisor_of(x)) == 0;
      dp = dp && x.pow(p).derivative().is_zero();
      height = height && divisor_degree(pole_divisor(x)) == x.height();
      int d = divisor_degree(pole_divisor(x)) - 1;
      Divisor A = pole_divisor(x);
      A[Place::infinity()] -= 1;
      if (A[Place::infinity()] == 0) A.erase(Place::infinity());
      rr = rr && static_cast<int>(riemann_roch_basis(f, A).size()) == std::max(0, d + 1);
    }
    std::string tag = " (p=" + std::to_string(p) + ")";
    s.add("divisor of an element has degree 0" + tag, deg0);
    s.add("derivative of a p-th power vanishes" + tag, dp);
    s.add("height equals degree of the pole divisor" + tag, height);
    s.add("l(A) = deg A + 1 at genus 0" + tag, rr);
  }
}

void templates_suite(Suite& s, Rng&) {
  bool c5 = true;
  for (int p : {2, 3, 5, 7, 11, 13}) {
    ConstantsRecord c = compute_constants(p, 1);
    c5 = c5 && c.C5 > 0 && c.C1 > 0;
  }
  s.add("constants positive for p <= 13", c5);
  ConstantsRecord c3 = compute_constants(3, 1);
  s.add("p = 3, C = 1 record", c3.a == 1 && c3.C1 == Rational(6) && c3.C2 == Rational(7, 2) &&
                                   c3.C3 == Rational(64) && c3.C4 == Rational(0) && c3.C5 == Rational(8));
  const Field* f = Field::get(3, 1);
  EquationSystem bp = gen_base_pair_system(f);
  s.add("system JSON round trip", system_to_json(system_from_json(system_to_json(bp))) == system_to_json(bp));
  Assignment wit = build_base_pair_witness(f, 1);
  EquationSystem single;
  single.field = f;
  single.unknowns = bp.unknowns;
  single.equations.push_back(Equation::leaf(combine_to_single(bp)));
  s.add("combined equation vanishes at a witness", verify_assignment(single, wit).ok());
  Assignment off = wit;
  off["w"] = RatFunc::t(f);
  s.add("combined equation agrees with the system off the solution set",
        verify_assignment(bp, off).ok() == verify_assignment(single, off).ok());
}

void witness_suite(Suite& s, Rng& rng) {
  bool as = true;
  for (int p : {2, 3, 5}) {
    const Field* f = Field::get(p, 1);
    long long pa = 1;
    for (int k = 0; k < compute_constants(p, 1).a; ++k) pa *= p;
    for (int sx = 0; sx <= 3; ++sx)
      for (int i = 0; i < 5; ++i) {
        RatFunc x = random_ratfunc(f, rng, 2);
        long long P = 1;
        for (int k = 0; k < sx; ++k) P *= pa;
        RatFunc v = artin_schreier_witness(x, pa, sx);
        as = as && v.pow(pa) - v == x.pow(P) - x;
      }
  }
  s.add("Artin-Schreier identity", as);
  for (int p : {2, 3}) {
    const Field* f = Field::get(p, 1);
    bool ok = true;
    for (int sx = 0; sx <= 2; ++sx) {
      ok = ok && verify_assignment(gen_base_pair_system(f), build_base_pair_witness(f, sx)).ok();
      RatFunc x = RatFunc::parse(f, "t + 1");
      ok = ok && verify_assignment(gen_full_pk_pair_system(f, sx), build_full_pk_pair_witness(x, sx)).ok();
    }
    s.add("base pair and P(K) witnesses verify (p=" + std::to_string(p) + ")", ok);
  }
}

void integrality_suite(Suite& s, Rng&) {
  const Field* f = Field::get(3, 1);
  bool dich = true, away = true;
  for (auto& w : enumerate_ratfuncs(f, 1)) {
    if (w.is_zero()) continue;
    bool pole = ord_at(w, Place::finite(Poly::var(f))) < 0;
    dich = dich && pole_obstruction_at_zero_of_t(w, 2) == pole;
    for (auto& [P, r] : divisor_mod_q_profile(w, 2))
      if (P != Place::finite(Poly::var(f))) away = away && r == 0;
  }
  s.add("h_w obstruction iff w has a pole at t (H <= 1)", dich);
  s.add("profile vanishes away from t (H <= 1)", away);
  TowerSpec ts = make_tower(f, 2);
  bool wit = true;
  for (int m = 0; m <= 4; ++m) wit = wit && construct_int_witness(RatFunc::t_pow(f, m), ts).has_value();
  s.add("INT witnesses for t^m, m <= 4", wit);
  s.add("screen refutes 1/t at bound 1", norm_screen_refutes(RatFunc::t_pow(f, -1), ts, 1));
}

void solver_suite(Suite& s, Rng&) {
  const Field* f = Field::get(2, 1);
  auto xs = enumerate_ratfuncs(f, 2);
  std::set<std::string> seen;
  for (auto& x : xs) seen.insert(x.to_string());
  s.add("enumeration without duplicates (F_2, H <= 2)", seen.size() == xs.size());
  PkSweepReport r = check_pk_power_theorem(3, 1, 2);
  s.add("base pair sweep over F_3, H(w) <= 1, witnesses <= 2", r.ok(), r.to_json().dump());
}

void compiler_suite(Suite& s, Rng&) {
  for (auto [text, p] : {std::pair<const char*, int>{"x1 + x2 = x3", 3}, {"x1 |p x2", 2}, {"x1 |p x2 & x1 + x1 = x2", 3}}) {
    ModelCheckReport r = restricted_model_check(parse_formula(text), p, 4, 2);
    s.add(std::string("round trip: ") + text + " (p=" + std::to_string(p) + ")", r.ok());
  }
}

const std::vector<std::pair<std::string, std::function<void(Suite&, Rng&)>>>& suites() {
  static const std::vector<std::pair<std::string, std::function<void(Suite&, Rng&)>>> all = {
      {"ff_core", ff_core_suite},   {"templates", templates_suite}, {"witness", witness_suite},
      {"integrality", integrality_suite}, {"solver", solver_suite}, {"compiler", compiler_suite},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (auto& [n, fn] : suites()) out.push_back(n);
  out.push_back("all");
  return out;
}

Json run_suite(const std::string& name, std::uint64_t seed, bool& ok) {
  Json report = Json::object();
  ok = true;
  bool found = false;
  for (auto& [n, fn] : suites()) {
    if (name != "all" && name != n) continue;
    found = true;
    Rng rng(seed);
    Suite s;
    fn(s, rng);
    report[n] = {{"ok", s.ok}, {"checks", s.checks}};
    ok = ok && s.ok;
  }
  if (!found) throw std::invalid_argument("unknown suite '" + name + "'");
  return report;
}

}  // namespace h10ff::cli
