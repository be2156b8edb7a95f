#include "h10ff/templates.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace h10ff {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int a_for(int p) { return p > 2 ? 1 : 2; }

MultiPoly var(const Field* f, const std::string& name) { return MultiPoly::var(f, name); }
MultiPoly cst(const Field* f, Fe c) { return MultiPoly(RatFunc::constant(f, c)); }
MultiPoly tpow(const Field* f, long long n) { return MultiPoly(RatFunc::t_pow(f, n)); }

/// x^(pa) - x.
MultiPoly artin_schreier(const MultiPoly& x, long long pa) { return x.pow(static_cast<unsigned>(pa)) - x; }

void collect_cleared(const Equation& e, std::set<std::string>& out) {
  for (auto& c : e.cleared()) out.insert(c.to_string());
  for (auto& c : e.children()) collect_cleared(c, out);
}

void finish_meta(EquationSystem& sys, const std::string& name, Json params) {
  std::set<std::string> cleared;
  for (auto& e : sys.equations) collect_cleared(e, cleared);
  sys.meta["template"] = name;
  sys.meta["params"] = std::move(params);
  Json arr = Json::array();
  for (auto& c : cleared) arr.push_back(c);
  sys.meta["cleared_denominators"] = arr;
}

/// Prime powers of the factorisation of n, ascending by prime.
std::vector<long long> prime_power_parts(long long n) {
  std::vector<long long> parts;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    long long pp = 1;
    while (n % d == 0) {
      n /= d;
      pp *= d;
    }
    parts.push_back(pp);
  }
  if (n > 1) parts.push_back(n);
  return parts;
}

/// Splits some of the prime powers of n into `count` groups, each with
/// product > bound. Groups are tried in index order before skipping a part.
bool choose_orders(long long n, int count, long long bound, std::vector<long long>& orders) {
  std::vector<long long> parts = prime_power_parts(n);
  std::vector<long long> prod(count, 1);
  std::function<bool(std::size_t)> rec = [&](std::size_t idx) -> bool {
    if (idx == parts.size()) {
      for (long long v : prod)
        if (v <= bound || v == 1) return false;
      return true;
    }
    for (int g = 0; g < count; ++g) {
      prod[g] *= parts[idx];
      if (rec(idx + 1)) return true;
      prod[g] /= parts[idx];
    }
    return rec(idx + 1);
  };
  if (!rec(0)) return false;
  orders = prod;
  return true;
}

}  // namespace

std::string rational_to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

ConstantsRecord compute_constants(int p, long long C) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (C < 1) throw std::invalid_argument("C must be at least 1");
  ConstantsRecord r;
  r.p = p;
  r.a = a_for(p);
  r.C = C;
  long long pa = ipow(p, r.a);
  long long g = r.g;
  r.C1 = Rational(2 * g - 2 + (pa + 1) * (C + g + 1));
  r.C2 = Rational(2 * g - 1 + (pa + 1) * (C + g + 1), pa - 1);
  r.C3 = Rational(C) + Rational(pa) * r.C1 * r.C2;
  long long kfact = 1, kk = 1;
  for (int i = 1; i <= r.k; ++i) {
    kfact *= i;
    kk *= r.k;
  }
  r.C4 = Rational(kfact * kk * r.h_omega) * r.C3;
  // H(t) = 1.
  r.C5 = r.C4 + Rational(2 * r.e + 2 * r.k + 4 * 1 + 2);
  return r;
}

Json constants_to_json(const ConstantsRecord& c) {
  Json j;
  j["p"] = c.p;
  j["g"] = c.g;
  j["a"] = c.a;
  j["C"] = c.C;
  j["k"] = c.k;
  j["H_Omega"] = c.h_omega;
  j["e"] = c.e;
  j["C1"] = rational_to_string(c.C1);
  j["C2"] = rational_to_string(c.C2);
  j["C3"] = rational_to_string(c.C3);
  j["C4"] = rational_to_string(c.C4);
  j["C5"] = rational_to_string(c.C5);
  return j;
}

ConstantSet make_constant_set(const Field* f, const std::vector<Fe>& elements, long long exp_bound) {
  ConstantSet cs;
  cs.field = f;
  cs.exp_bound = exp_bound;
  for (Fe c : elements) {
    cs.elements.push_back(c);
    std::vector<Fe> orbit{c};
    for (Fe x = f->frob(c); x != c; x = f->frob(x)) orbit.push_back(x);
    cs.orbits.push_back(orbit);
  }
  return cs;
}

ConstantSet build_constant_set(const Field* f, int count, long long exp_bound) {
  if (count < 1) throw std::invalid_argument("count must be positive");
  std::vector<long long> orders;
  if (!choose_orders(static_cast<long long>(f->q()) - 1, count, exp_bound, orders)) {
    std::string hint = "no degree up to 60 works";
    long long q = f->q();
    for (int k = f->k() + 1; k <= 60; ++k) {
      if (q > (1LL << 58) / f->p()) break;
      q *= f->p();
      std::vector<long long> tmp;
      if (choose_orders(q - 1, count, exp_bound, tmp)) {
        hint = "smallest sufficient k is " + std::to_string(k);
        break;
      }
    }
    throw std::runtime_error("constant field F_" + std::to_string(f->q()) + " too small for " +
                             std::to_string(count) + " constants with exponent bound " +
                             std::to_string(exp_bound) + ": enlarge k (" + hint + ")");
  }
  std::vector<Fe> elements;
  for (long long o : orders) {
    for (Fe c = 1; c < f->q(); ++c)
      if (static_cast<long long>(f->order(c)) == o) {
        elements.push_back(c);
        break;
      }
  }
  return make_constant_set(f, elements, exp_bound);
}

bool constant_set_independent(const ConstantSet& cs) {
  const Field* f = cs.field;
  long long B = cs.exp_bound;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (i == j) continue;
      std::set<Fe> powers;
      for (long long n = -B; n <= B; ++n)
        if (n != 0) powers.insert(f->pow(cs.elements[i], n));
      for (long long m = -B; m <= B; ++m)
        if (m != 0 && powers.count(f->pow(cs.elements[j], m))) return false;
    }
  return true;
}

ConstantSet admissible_constants(const RatFunc& z, const ConstantSet& cs, const std::vector<Place>& excluded) {
  if (z.is_constant()) throw std::invalid_argument("z must be nonconstant");
  std::vector<Fe> kept;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    bool ok = true;
    for (Fe d : cs.orbits[i]) {
      RatFunc diff = z - RatFunc::constant(cs.field, d);
      for (auto& P : excluded)
        if (ord_at(diff, P) > 0) ok = false;
    }
    if (ok) kept.push_back(cs.elements[i]);
  }
  return make_constant_set(cs.field, kept, cs.exp_bound);
}

Json constant_set_to_json(const ConstantSet& cs) {
  Json j;
  j["field"] = field_to_json(cs.field);
  j["exp_bound"] = cs.exp_bound;
  Json els = Json::array();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Json e;
    e["c"] = cs.field->to_string(cs.elements[i]);
    e["order"] = cs.field->order(cs.elements[i]);
    Json orb = Json::array();
    for (Fe x : cs.orbits[i]) orb.push_back(cs.field->to_string(x));
    e["orbit"] = orb;
    els.push_back(e);
  }
  j["elements"] = els;
  return j;
}

namespace {

void add_base_pair(EquationSystem& sys, long long pa) {
  const Field* f = sys.field;
  MultiPoly w = var(f, "w"), u = var(f, "u"), v = var(f, "v"), t = MultiPoly::t(f);
  for (auto n : {"w", "u", "v"}) sys.add_unknown(n);
  sys.equations.push_back(Equation::leaf(t - w - w * t * artin_schreier(u, pa), {w}, "1/w - 1/t = u^pa - u"));
  sys.equations.push_back(Equation::leaf(w - t - artin_schreier(v, pa), {}, "w - t = v^pa - v"));
}

}  // namespace

EquationSystem gen_base_pair_system(const Field* f) {
  EquationSystem sys;
  sys.field = f;
  int a = a_for(f->p());
  add_base_pair(sys, ipow(f->p(), a));
  Json params;
  params["p"] = f->p();
  params["a"] = a;
  finish_meta(sys, "base_pair", params);
  return sys;
}

std::string pk_pair_unknown(char which, std::size_t i, std::size_t j, int jb, int jbp) {
  return std::string(1, which) + "_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(jb) + "_" +
         std::to_string(jbp);
}

EquationSystem gen_pk_power_of_t_system(int p, const ConstantSet& cs, const ConstantsRecord& consts, bool desk_clamp) {
  if (cs.size() == 0) throw std::invalid_argument("empty constant set");
  const Field* f = cs.field;
  if (f->p() != p || consts.p != p) throw std::invalid_argument("characteristic mismatch");
  long long c5 = boost::rational_cast<long long>(consts.C5);
  if (consts.C5.denominator() != 1) ++c5;
  if (!desk_clamp && static_cast<long long>(cs.size()) < c5)
    throw std::invalid_argument("constant set has " + std::to_string(cs.size()) + " elements, C5 = " +
                                std::to_string(c5) + " required (desk clamp not requested)");
  long long pa = ipow(p, consts.a);
  EquationSystem sys;
  sys.field = f;
  add_base_pair(sys, pa);
  MultiPoly w = var(f, "w"), t = MultiPoly::t(f);
  Json pairs = Json::array();
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (i == j) continue;
      MultiPoly tci = t - cst(f, cs.elements[i]), tcj = t - cst(f, cs.elements[j]);
      std::vector<Equation> choices;
      for (int jb = 0; jb < cs.r(i); ++jb)
        for (int jbp = 0; jbp < cs.r(j); ++jbp) {
          std::string un = pk_pair_unknown('u', i, j, jb, jbp), vn = pk_pair_unknown('v', i, j, jb, jbp);
          sys.add_unknown(un);
          sys.add_unknown(vn);
          MultiPoly wb = w - cst(f, cs.d(i, jb)), wbp = w - cst(f, cs.d(j, jbp));
          MultiPoly U = var(f, un), V = var(f, vn);
          Equation e1 = Equation::leaf(wb * tcj - tci * wbp - wbp * tcj * artin_schreier(U, pa), {wbp});
          Equation e2 = Equation::leaf(wbp * tci - tcj * wb - wb * tci * artin_schreier(V, pa), {wb});
          choices.push_back(Equation::combine({e1, e2}));
        }
      pairs.push_back(Json::array({i, j}));
      sys.equations.push_back(Equation::product(std::move(choices), "pair " + std::to_string(i) + " " + std::to_string(j)));
    }
  Json params;
  params["p"] = p;
  params["a"] = consts.a;
  params["C5_nominal"] = rational_to_string(consts.C5);
  params["constants_used"] = cs.size();
  params["desk_clamp"] = desk_clamp;
  params["constants"] = constant_set_to_json(cs);
  params["pairs"] = pairs;
  finish_meta(sys, "pk_power_of_t", params);
  return sys;
}

MultiPoly gen_getdown_equation(const Field* f, Fe b, Fe bp, Fe c, Fe cp, int p, int a) {
  if (b == bp) throw std::invalid_argument("getdown equation needs b != b'");
  long long pa = ipow(p, a);
  MultiPoly w = var(f, "w"), t = MultiPoly::t(f), u = var(f, "u_b");
  MultiPoly wc = w - cst(f, c), wcp = w - cst(f, cp), tb = t - cst(f, b), tbp = t - cst(f, bp);
  return wcp * tb - tbp * wc - wc * tb * artin_schreier(u, pa);
}

std::string d_uu(std::size_t i, std::size_t l) { return "uu_" + std::to_string(i) + "_" + std::to_string(l); }
std::string d_vv(std::size_t i, int ji, std::size_t l, int jl) {
  return "vv_" + std::to_string(i) + "_" + std::to_string(ji) + "_" + std::to_string(l) + "_" + std::to_string(jl);
}
std::string d_mu(std::size_t i, int ji, std::size_t l, int jl, int z, int m) {
  return "mu_" + std::to_string(i) + "_" + std::to_string(ji) + "_" + std::to_string(l) + "_" + std::to_string(jl) +
         (z > 0 ? "_zp_" : "_zn_") + std::to_string(m);
}
std::string d_sigma(std::size_t i, int ji, std::size_t l, int jl) {
  return "sigma_" + std::to_string(i) + "_" + std::to_string(ji) + "_" + std::to_string(l) + "_" + std::to_string(jl);
}

EquationSystem gen_d_system(int p, int a, int s, const ConstantSet& cs) {
  if (cs.size() < 2) throw std::invalid_argument("D system needs at least two constants");
  const Field* f = cs.field;
  if (f->p() != p) throw std::invalid_argument("characteristic mismatch");
  if (s < 0) throw std::invalid_argument("s must be nonnegative");
  long long pa = ipow(p, a);
  long long P = ipow(pa, s);
  EquationSystem sys;
  sys.field = f;
  sys.add_unknown("u");
  sys.add_unknown("v");
  MultiPoly u = var(f, "u"), v = var(f, "v"), t = MultiPoly::t(f);
  std::size_t n = cs.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (i == l) continue;
      sys.add_unknown(d_uu(i, l));
      MultiPoly uu = var(f, d_uu(i, l));
      MultiPoly den = u + cst(f, cs.elements[l]);
      sys.equations.push_back(Equation::leaf(uu * den - (u + cst(f, cs.elements[i])), {den},
                                             "2.1 " + std::to_string(i) + " " + std::to_string(l)));
    }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Equation> by_ji;
    for (int ji = 0; ji < cs.r(i); ++ji) {
      std::vector<Equation> all_l;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i) continue;
        MultiPoly uu = var(f, d_uu(i, l));
        std::vector<Equation> by_jl;
        for (int jl = 0; jl < cs.r(l); ++jl) {
          std::string vvn = d_vv(i, ji, l, jl), sn = d_sigma(i, ji, l, jl);
          sys.add_unknown(vvn);
          MultiPoly vv = var(f, vvn);
          std::vector<Equation> block;
          MultiPoly den = v + cst(f, cs.d(l, jl));
          block.push_back(Equation::leaf(vv * den - (v + cst(f, cs.d(i, ji))), {den}, "2.2"));
          for (int m = 0; m <= 1; ++m)
            for (int z : {1, -1}) {
              std::string mn = d_mu(i, ji, l, jl, z, m);
              sys.add_unknown(mn);
              MultiPoly as = artin_schreier(var(f, mn), pa);
              MultiPoly vv2 = vv * vv, uu2 = uu * uu;
              if (z == 1)
                block.push_back(Equation::leaf(vv2 * tpow(f, m * P) - uu2 * tpow(f, m) - as, {}, "2.3"));
              else
                block.push_back(
                    Equation::leaf(uu2 * tpow(f, m * P) - vv2 * tpow(f, m) - vv2 * uu2 * as, {vv, uu}, "2.3"));
            }
          sys.add_unknown(sn);
          block.push_back(Equation::leaf(vv - uu - artin_schreier(var(f, sn), pa), {}, "2.4"));
          by_jl.push_back(Equation::combine(std::move(block)));
        }
        all_l.push_back(Equation::product(std::move(by_jl)));
      }
      by_ji.push_back(Equation::combine(std::move(all_l)));
    }
    sys.equations.push_back(Equation::product(std::move(by_ji), "choice i=" + std::to_string(i)));
  }
  sys.add_unknown("lambda_p");
  sys.add_unknown("lambda_n");
  sys.equations.push_back(Equation::leaf(v - u - artin_schreier(var(f, "lambda_p"), pa), {}, "2.5"));
  sys.equations.push_back(Equation::leaf(u - v - u * v * artin_schreier(var(f, "lambda_n"), pa), {u, v}, "2.5.1"));
  Json params;
  params["p"] = p;
  params["a"] = a;
  params["s"] = s;
  params["constants"] = constant_set_to_json(cs);
  finish_meta(sys, "d_system", params);
  return sys;
}

namespace {

struct ENames {
  std::string u, ut, v, vt;
};

ENames e_names(const std::string& suffix) { return {"u" + suffix, "ut" + suffix, "v" + suffix, "vt" + suffix}; }

void add_e_equations(EquationSystem& sys, const MultiPoly& x, const MultiPoly& y, const std::string& suffix, int s,
                     int j, int r) {
  const Field* f = sys.field;
  int p = f->p();
  if (p == 2) throw std::invalid_argument("E system needs p > 2 (use E2)");
  ENames n = e_names(suffix);
  for (auto& name : {n.u, n.ut, n.v, n.vt}) sys.add_unknown(name);
  MultiPoly u = var(f, n.u), ut = var(f, n.ut), v = var(f, n.v), vt = var(f, n.vt);
  MultiPoly t = MultiPoly::t(f), one = MultiPoly::constant(f, 1), tP = tpow(f, ipow(p, s));
  MultiPoly xp = x.pow(p), yp = y.pow(p);
  sys.equations.push_back(Equation::leaf(v - u.pow(static_cast<unsigned>(ipow(p, r))), {}, "final1"));
  sys.equations.push_back(Equation::leaf(vt - ut.pow(static_cast<unsigned>(ipow(p, j))), {}, "final2"));
  sys.equations.push_back(Equation::leaf(u * (xp - t) - (xp + t), {xp - t}, "final3"));
  sys.equations.push_back(Equation::leaf(ut * (t * xp - one) - (t * xp + one), {t * xp - one}, "final4"));
  sys.equations.push_back(Equation::leaf(v * (yp - tP) - (yp + tP), {yp - tP}, "final5"));
  sys.equations.push_back(Equation::leaf(vt * (tP * yp - one) - (tP * yp + one), {tP * yp - one}, "final6"));
}

void add_e2_equations(EquationSystem& sys, const MultiPoly& x, const MultiPoly& y, int s, int j, int r) {
  const Field* f = sys.field;
  if (f->p() != 2) throw std::invalid_argument("E2 system needs characteristic 2");
  ENames n = e_names("");
  for (auto& name : {n.u, n.ut, n.v, n.vt}) sys.add_unknown(name);
  MultiPoly u = var(f, n.u), ut = var(f, n.ut), v = var(f, n.v), vt = var(f, n.vt);
  MultiPoly t = MultiPoly::t(f), one = MultiPoly::constant(f, 1), t2 = tpow(f, 2);
  MultiPoly tP = tpow(f, ipow(2, s)), t2P = tpow(f, ipow(2, s + 1));
  MultiPoly x2 = x * x, y2 = y * y;
  sys.equations.push_back(Equation::leaf(v - u.pow(static_cast<unsigned>(ipow(2, r))), {}, "final12"));
  sys.equations.push_back(Equation::leaf(vt - ut.pow(static_cast<unsigned>(ipow(2, j))), {}, "final22"));
  sys.equations.push_back(Equation::leaf(u * (x2 + t) - (x2 + t2 + t), {x2 + t}, "final32"));
  sys.equations.push_back(Equation::leaf(ut * (t2 * x2 + t) - (t2 * x2 + t + one), {t2 * x2 + t}, "final42"));
  sys.equations.push_back(Equation::leaf(v * (y2 + tP) - (y2 + t2P + tP), {y2 + tP}, "final52"));
  sys.equations.push_back(
      Equation::leaf(vt * (t2P * y2 + tP) - (t2P * y2 + one + tP), {t2P * y2 + tP}, "final62"));
}

Json e_params(const Field* f, int s, int j, int r) {
  Json params;
  params["p"] = f->p();
  params["s"] = s;
  params["j"] = j;
  params["r"] = r;
  return params;
}

}  // namespace

EquationSystem gen_e_system(const Field* f, int s, int j, int r) {
  EquationSystem sys;
  sys.field = f;
  add_e_equations(sys, var(f, "x"), var(f, "y"), "", s, j, r);
  sys.add_unknown("x");
  sys.add_unknown("y");
  finish_meta(sys, "e_system", e_params(f, s, j, r));
  return sys;
}

EquationSystem gen_e_system(const Field* f, int s) { return gen_e_system(f, s, s, s); }

EquationSystem gen_e2_system(const Field* f, int s, int j, int r) {
  EquationSystem sys;
  sys.field = f;
  add_e2_equations(sys, var(f, "x"), var(f, "y"), s, j, r);
  sys.add_unknown("x");
  sys.add_unknown("y");
  finish_meta(sys, "e2_system", e_params(f, s, j, r));
  return sys;
}

EquationSystem gen_e2_system(const Field* f, int s) { return gen_e2_system(f, s, s, s); }

EquationSystem gen_full_pk_pair_system(const Field* f, int s) {
  if (f->p() == 2) {
    EquationSystem sys = gen_e2_system(f, s);
    sys.meta["template"] = "full_pk_pair";
    return sys;
  }
  EquationSystem sys;
  sys.field = f;
  MultiPoly x = var(f, "x"), y = var(f, "y"), one = MultiPoly::constant(f, 1);
  add_e_equations(sys, x, y, "", s, s, s);
  add_e_equations(sys, x + one, y + one, "1", s, s, s);
  sys.add_unknown("x");
  sys.add_unknown("y");
  finish_meta(sys, "full_pk_pair", e_params(f, s, s, s));
  return sys;
}

MultiPoly combine_to_single(const EquationSystem& sys) {
  if (sys.equations.empty()) throw std::invalid_argument("system has no equations");
  std::vector<MultiPoly> polys;
  for (auto& e : sys.equations) polys.push_back(e.expand());
  return combine_polys(polys);
}

EquationSystem prefixed(const EquationSystem& sys, const std::string& prefix) {
  EquationSystem out;
  out.field = sys.field;
  out.meta = sys.meta;
  auto fn = [&](const std::string& n) { return prefix + n; };
  for (auto& u : sys.unknowns) out.unknowns.push_back(fn(u));
  for (auto& e : sys.equations) out.equations.push_back(e.rename(fn));
  return out;
}

}  // namespace h10ff
