#include "h10ff/integrality.hpp"

#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "h10ff/linalg.hpp"
#include "h10ff/series.hpp"
#include "h10ff/solver.hpp"
#include "h10ff/witness.hpp"

namespace h10ff {

namespace {

Place place_t(const Field* f) { return Place::from_irreducible(Poly::var(f)); }

std::string coeff_text(const RatFunc& c) {
  const Field* f = c.field();
  if (c.is_constant()) return f->to_string(c.constant_value());
  if (c.is_polynomial()) return "(" + c.num().to_string() + ")";
  return "(" + c.to_string() + ")";
}

std::string minpoly_text(const std::vector<RatFunc>& m) {
  std::string out;
  int n = static_cast<int>(m.size()) - 1;
  for (int i = n; i >= 0; --i) {
    const RatFunc& c = m[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    std::string mono = i == 0 ? "" : (i == 1 ? "T" : "T^" + std::to_string(i));
    std::string term;
    if (c.is_one() && i > 0)
      term = mono;
    else
      term = coeff_text(c) + (mono.empty() ? "" : "*" + mono);
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

Fe trace_to_prime(const Field* f, Fe a) {
  Fe s = 0, x = a;
  for (int i = 0; i < f->k(); ++i) {
    s = f->add(s, x);
    x = f->frob(x);
  }
  return s;
}

bool alpha_ok(const Field* f, int q, Fe a) {
  if (q == f->p()) return trace_to_prime(f, a) != 0;
  return a != 0 && f->pow(a, static_cast<long long>((f->q() - 1) / static_cast<Fe>(q))) != 1;
}

/// True when c is an n-th power in F(t) (n prime).
bool is_nth_power(const RatFunc& c, int n) {
  const Field* f = c.field();
  if (c.is_zero()) return true;
  if (n == f->p()) {
    for (const Poly* part : {&c.num(), &c.den()})
      for (int i = 0; i <= part->degree(); ++i)
        if (i % n != 0 && part->coeff(i) != 0) return false;
    return true;
  }
  for (const Poly* part : {&c.num(), &c.den()})
    for (auto& fa : factor(*part))
      if (fa.mult % n != 0) return false;
  Fe lc = c.num().lc();
  Fe Q1 = f->q() - 1;
  Fe g = std::gcd(Q1, static_cast<Fe>(n));
  return f->pow(lc, static_cast<long long>(Q1 / g)) == 1;
}

/// Throws unless the monic polynomial is certifiably irreducible over F(t).
void certify_irreducible(const Field* f, const std::vector<RatFunc>& m, const std::string& what) {
  int n = static_cast<int>(m.size()) - 1;
  if (n < 1 || !m.back().is_one()) throw std::invalid_argument(what + ": expected a monic polynomial of degree >= 1");
  if (n == 1) throw std::invalid_argument(what + " is reducible: its root lies in the base field");
  bool all_const = true;
  for (auto& c : m) all_const = all_const && c.is_constant();
  if (all_const) {
    std::vector<Fe> cs;
    for (auto& c : m) cs.push_back(c.constant_value());
    if (!is_irreducible(Poly(f, cs))) throw std::invalid_argument(what + " is reducible over the constants");
    return;
  }
  bool binomial = true;
  for (int i = 1; i < n; ++i) binomial = binomial && m[static_cast<std::size_t>(i)].is_zero();
  if (binomial && is_prime(n)) {
    if (is_nth_power(-m[0], n)) throw std::invalid_argument(what + " is reducible: the radicand is a power");
    return;
  }
  bool as = n == f->p() && m[1] == RatFunc::from_int(f, -1);
  for (int i = 2; i < n; ++i) as = as && m[static_cast<std::size_t>(i)].is_zero();
  if (as) {
    RatFunc c = -m[0];
    for (auto& [P, o] : divisor_of(c))
      if (o < 0 && (-o) % f->p() != 0) return;
    throw std::invalid_argument(what + ": cannot certify irreducibility (no pole of order prime to p)");
  }
  throw std::invalid_argument(what + ": cannot certify irreducibility of this shape");
}

std::string conjugate_rule_for(const Field* f, const std::vector<RatFunc>& m) {
  int n = static_cast<int>(m.size()) - 1;
  bool binomial = true;
  for (int i = 1; i < n; ++i) binomial = binomial && m[static_cast<std::size_t>(i)].is_zero();
  if (binomial && n != f->p()) return "alpha_j = xi_q^j * alpha";
  if (n == f->p() && m[1] == RatFunc::from_int(f, -1)) return "alpha_j = alpha + j";
  return "alpha_j ranges over the roots of the minimal polynomial";
}

MultiPoly det(const std::vector<std::vector<MultiPoly>>& a, const Field* f) {
  std::size_t n = a.size();
  if (n == 0) return MultiPoly::constant(f, 1);
  if (n == 1) return a[0][0];
  MultiPoly r(f);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<MultiPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    MultiPoly term = a[0][j] * det(minor, f);
    r = j % 2 == 0 ? r + term : r - term;
  }
  return r;
}

}  // namespace

std::vector<RatFunc> TowerSpec::alpha_min() const {
  std::vector<RatFunc> m(static_cast<std::size_t>(q) + 1, RatFunc(field));
  m[0] = -RatFunc::constant(field, a);
  if (artin_schreier()) m[1] = RatFunc::from_int(field, -1);
  m[static_cast<std::size_t>(q)] = RatFunc::from_int(field, 1);
  return m;
}

std::vector<RatFunc> TowerSpec::delta_min() const {
  std::vector<RatFunc> m(static_cast<std::size_t>(q) + 1, RatFunc(field));
  RatFunc t = RatFunc::t(field);
  if (artin_schreier()) {
    m[0] = t;
    m[1] = RatFunc::from_int(field, -1);
  } else {
    m[0] = -(t + RatFunc::from_int(field, 1));
  }
  m[static_cast<std::size_t>(q)] = RatFunc::from_int(field, 1);
  return m;
}

std::vector<RatFunc> TowerSpec::beta_min(const RatFunc& w) const {
  std::vector<RatFunc> m(static_cast<std::size_t>(q) + 1, RatFunc(field));
  RatFunc ih = compute_h(w, q).inv();
  if (artin_schreier()) {
    m[0] = -ih;
    m[1] = RatFunc::from_int(field, -1);
  } else {
    m[0] = -(ih + RatFunc::from_int(field, 1));
  }
  m[static_cast<std::size_t>(q)] = RatFunc::from_int(field, 1);
  return m;
}

Json TowerSpec::to_json() const {
  Json j;
  j["branch"] = artin_schreier() ? "q=p" : "q!=p";
  j["field"] = field_to_json(field);
  j["q"] = q;
  j["a"] = field->to_string(a);
  j["alphaMin"] = minpoly_text(alpha_min());
  j["deltaMin"] = minpoly_text(delta_min());
  std::string qs = std::to_string(q);
  j["betaMin"] = artin_schreier() ? "T^" + qs + " - T - 1/h_w" : "T^" + qs + " - (1/h_w + 1)";
  j["h_w"] = "t^-1*w^" + qs + " + t^-" + qs;
  Json basis = Json::array();
  for (int r = 0; r < q; ++r)
    for (int s = 0; s < q; ++s) basis.push_back("delta^" + std::to_string(r) + "*beta^" + std::to_string(s));
  j["basis"] = basis;
  return j;
}

TowerSpec make_tower(const Field* f, int q, std::optional<Fe> a) {
  if (!is_prime(q)) throw std::invalid_argument("auxiliary q must be prime");
  int p = f->p();
  if (q != p && (f->q() - 1) % static_cast<Fe>(q) != 0)
    throw std::invalid_argument("F_" + std::to_string(f->q()) + " has no primitive " + std::to_string(q) +
                                "-th root of unity");
  TowerSpec ts;
  ts.field = f;
  ts.q = q;
  ts.p = p;
  if (a) {
    if (!alpha_ok(f, q, *a)) throw std::invalid_argument("alphaMin is reducible for a = " + f->to_string(*a));
    ts.a = *a;
    return ts;
  }
  for (Fe c = 1; c < f->q(); ++c)
    if (alpha_ok(f, q, c)) {
      ts.a = c;
      return ts;
    }
  throw std::invalid_argument("no element a makes alphaMin irreducible over F_" + std::to_string(f->q()));
}

TowerSpec tower_from_json(const Json& j) {
  const Field* f = field_from_json(j.at("field"));
  int q = j.at("q").get<int>();
  std::optional<Fe> a;
  if (j.contains("a")) a = f->parse(j["a"].get<std::string>());
  return make_tower(f, q, a);
}

int default_aux_prime(const Field* f) {
  for (int q : {2, 3})
    if (q != f->p() && (f->q() - 1) % static_cast<Fe>(q) == 0) return q;
  return f->p();
}

RatFunc compute_h(const RatFunc& w, int q) {
  const Field* f = w.field();
  return w.pow(q) * RatFunc::t_pow(f, -1) + RatFunc::t_pow(f, -q);
}

bool pole_obstruction_at_zero_of_t(const RatFunc& w, int q) {
  const Field* f = w.field();
  int o = ord_at(compute_h(w, q), place_t(f));
  bool obstructed = o % q != 0;
  bool pole = !w.is_zero() && ord_at(w, place_t(f)) < 0;
  if (obstructed != pole) throw std::logic_error("order dichotomy fails for w = " + w.to_string());
  return obstructed;
}

std::map<Place, int> divisor_mod_q_profile(const RatFunc& w, int q) {
  const Field* f = w.field();
  int p = f->p();
  Place tp1 = Place::from_irreducible(Poly::var(f) + Poly::constant(f, 1));
  std::map<Place, int> out;
  for (auto& [P, o] : divisor_of(compute_h(w, q))) {
    if (P.is_infinite()) continue;
    int e_delta = q != p && P == tp1 ? q : 1;
    int e_beta = e_delta == 1 && o > 0 && o % q != 0 ? q : 1;
    out[P] = ((e_delta * e_beta * o) % q + q) % q;
  }
  return out;
}

Json NormFormSpec::to_json() const {
  Json j;
  j["q"] = q;
  j["conjugate_rule"] = conjugate_rule;
  j["minpoly"] = minpoly_text(minpoly);
  j["vars"] = vars;
  j["P"] = P.to_string();
  return j;
}

NormFormSpec norm_form_of(const Field* f, const std::vector<RatFunc>& minpoly) {
  int n = static_cast<int>(minpoly.size()) - 1;
  if (n < 1 || !minpoly.back().is_one()) throw std::invalid_argument("norm form needs a monic polynomial");
  if (n > 5) throw std::invalid_argument("norm forms are supported up to degree 5");
  NormFormSpec nf;
  nf.q = n;
  nf.minpoly = minpoly;
  nf.conjugate_rule = conjugate_rule_for(f, minpoly);
  for (int i = 0; i < n; ++i) nf.vars.push_back("a" + std::to_string(i));
  // Sylvester matrix of minpoly (degree n) and A (formal degree n - 1).
  int size = 2 * n - 1;
  std::vector<std::vector<MultiPoly>> S(static_cast<std::size_t>(size),
                                        std::vector<MultiPoly>(static_cast<std::size_t>(size), MultiPoly(f)));
  for (int r = 0; r < n - 1; ++r)
    for (int i = 0; i <= n; ++i)
      S[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = MultiPoly(minpoly[static_cast<std::size_t>(n - i)]);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < n; ++i)
      S[static_cast<std::size_t>(n - 1 + r)][static_cast<std::size_t>(r + i)] =
          MultiPoly::var(f, nf.vars[static_cast<std::size_t>(n - 1 - i)]);
  nf.P = det(S, f);
  return nf;
}

NormFormSpec gen_norm_form(const Field* f, const std::vector<RatFunc>& minpoly) {
  certify_irreducible(f, minpoly, "alphaMin");
  return norm_form_of(f, minpoly);
}

NormFormSpec gen_norm_form(const TowerSpec& ts) { return gen_norm_form(ts.field, ts.alpha_min()); }

std::vector<RatFunc> poly_from_roots(const std::vector<RatFunc>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("no roots");
  const Field* f = alphas[0].field();
  std::vector<RatFunc> m{RatFunc::from_int(f, 1)};
  for (auto& al : alphas) {
    std::vector<RatFunc> next(m.size() + 1, RatFunc(f));
    for (std::size_t i = 0; i < m.size(); ++i) {
      next[i + 1] += m[i];
      next[i] -= m[i] * al;
    }
    m = next;
  }
  return m;
}

std::vector<RatFunc> solve_norm_form_split(const RatFunc& y, const std::vector<RatFunc>& alphas) {
  std::size_t q = alphas.size();
  if (q == 0) throw std::invalid_argument("no roots");
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j)
      if (alphas[i] == alphas[j]) throw std::invalid_argument("repeated root: the Vandermonde system is singular");
  const Field* f = y.field();
  std::vector<std::vector<RatFunc>> A(q, std::vector<RatFunc>(q, RatFunc(f)));
  std::vector<RatFunc> b(q, RatFunc::from_int(f, 1));
  b[0] = y;
  for (std::size_t j = 0; j < q; ++j) {
    RatFunc pw = RatFunc::from_int(f, 1);
    for (std::size_t i = 0; i < q; ++i) {
      A[j][i] = pw;
      pw *= alphas[j];
    }
  }
  return solve_linear(A, b);
}

std::string int_coordinate(int i, int r, int s) {
  return "a" + std::to_string(i) + "_" + std::to_string(r) + "_" + std::to_string(s);
}

namespace {

/// sum c[(r, s)] delta^r beta^s / D^dexp.
struct TowerElem {
  int dexp = 0;
  std::map<std::pair<int, int>, MultiPoly> c;
};

struct TowerRing {
  const Field* f;
  int q;
  bool as;
  MultiPoly D;

  void add_to(std::map<std::pair<int, int>, MultiPoly>& m, std::pair<int, int> k, const MultiPoly& v) const {
    auto it = m.find(k);
    if (it == m.end()) {
      if (!v.is_zero()) m.emplace(k, v);
      return;
    }
    it->second += v;
    if (it->second.is_zero()) m.erase(it);
  }

  TowerElem lift(const TowerElem& x, int dexp) const {
    TowerElem r = x;
    if (dexp < x.dexp) throw std::logic_error("cannot lower the denominator exponent");
    MultiPoly scale = D.pow(static_cast<unsigned>(dexp - x.dexp));
    for (auto& [k, v] : r.c) v = v * scale;
    r.dexp = dexp;
    return r;
  }

  TowerElem add(const TowerElem& x, const TowerElem& y) const {
    int d = std::max(x.dexp, y.dexp);
    TowerElem a = lift(x, d), b = lift(y, d);
    for (auto& [k, v] : b.c) add_to(a.c, k, v);
    return a;
  }

  TowerElem scale(const TowerElem& x, const RatFunc& c) const {
    TowerElem r;
    r.dexp = x.dexp;
    for (auto& [k, v] : x.c) add_to(r.c, k, MultiPoly(c) * v);
    return r;
  }

  void reduce_delta(TowerElem& x) const {
    RatFunc t = RatFunc::t(f);
    for (;;) {
      int top = -1;
      for (auto& [k, v] : x.c) top = std::max(top, k.first);
      if (top < q) return;
      std::map<std::pair<int, int>, MultiPoly> next;
      for (auto& [k, v] : x.c) {
        if (k.first != top) {
          add_to(next, k, v);
          continue;
        }
        if (as) {
          add_to(next, {k.first - q + 1, k.second}, v);
          add_to(next, {k.first - q, k.second}, MultiPoly(-t) * v);
        } else {
          add_to(next, {k.first - q, k.second}, MultiPoly(t + RatFunc::from_int(f, 1)) * v);
        }
      }
      x.c = next;
    }
  }

  void reduce_beta(TowerElem& x) const {
    MultiPoly tq = MultiPoly(RatFunc::t_pow(f, q));
    MultiPoly bnum = tq + D;
    for (;;) {
      int top = -1;
      for (auto& [k, v] : x.c) top = std::max(top, k.second);
      if (top < q) return;
      std::map<std::pair<int, int>, MultiPoly> next;
      for (auto& [k, v] : x.c) {
        if (k.second != top) {
          add_to(next, k, v * D);
          continue;
        }
        if (as) {
          add_to(next, {k.first, k.second - q + 1}, v * D);
          add_to(next, {k.first, k.second - q}, v * tq);
        } else {
          add_to(next, {k.first, k.second - q}, v * bnum);
        }
      }
      x.c = next;
      ++x.dexp;
    }
  }

  TowerElem mul(const TowerElem& x, const TowerElem& y) const {
    TowerElem r;
    r.dexp = x.dexp + y.dexp;
    for (auto& [ka, va] : x.c)
      for (auto& [kb, vb] : y.c) add_to(r.c, {ka.first + kb.first, ka.second + kb.second}, va * vb);
    reduce_delta(r);
    reduce_beta(r);
    return r;
  }
};

}  // namespace

EquationSystem gen_int_definition(const TowerSpec& ts) {
  const Field* f = ts.field;
  int q = ts.q;
  if (q > 3) throw std::invalid_argument("gen_int_definition supports q <= 3");
  certify_irreducible(f, ts.alpha_min(), "alphaMin");
  certify_irreducible(f, ts.delta_min(), "deltaMin");
  NormFormSpec nf = gen_norm_form(ts);
  MultiPoly w = MultiPoly::var(f, "w");
  TowerRing ring{f, q, ts.artin_schreier(), MultiPoly(RatFunc::t_pow(f, q - 1)) * w.pow(static_cast<unsigned>(q)) +
                                                MultiPoly::constant(f, 1)};
  EquationSystem sys;
  sys.field = f;
  sys.add_unknown("w");
  std::vector<TowerElem> as(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i)
    for (int r = 0; r < q; ++r)
      for (int s = 0; s < q; ++s) {
        std::string name = int_coordinate(i, r, s);
        sys.add_unknown(name);
        as[static_cast<std::size_t>(i)].c[{r, s}] = MultiPoly::var(f, name);
      }
  TowerElem total;
  for (auto& [mono, coeff] : nf.P.terms()) {
    TowerElem term;
    term.c[{0, 0}] = MultiPoly(coeff);
    for (auto& [var, e] : mono) {
      int i = std::stoi(var.substr(1));
      for (int k = 0; k < e; ++k) term = ring.mul(term, as[static_cast<std::size_t>(i)]);
    }
    total = ring.add(total, term);
  }
  MultiPoly rhs = ring.D.pow(static_cast<unsigned>(total.dexp + 1));
  for (int r = 0; r < q; ++r)
    for (int s = 0; s < q; ++s) {
      auto it = total.c.find({r, s});
      MultiPoly lhs = it == total.c.end() ? MultiPoly(f) : it->second;
      if (r == 0 && s == 0) lhs = MultiPoly(RatFunc::t_pow(f, q)) * lhs - rhs;
      std::string label = "delta^" + std::to_string(r) + "*beta^" + std::to_string(s);
      sys.equations.push_back(Equation::leaf(lhs, {ring.D}, label));
    }
  sys.meta["template"] = "int_definition";
  sys.meta["params"] = {{"q", q}, {"p", ts.p}};
  sys.meta["tower"] = ts.to_json();
  sys.meta["norm_form"] = nf.P.to_string();
  Json coords = Json::array();
  for (std::size_t i = 1; i < sys.unknowns.size(); ++i) coords.push_back(sys.unknowns[i]);
  sys.meta["coordinates"] = coords;
  sys.meta["cleared_denominators"] = Json::array({ring.D.to_string()});
  return sys;
}

Json NormSearchResult::to_json() const {
  Json j;
  j["found"] = witness.has_value();
  if (witness) j["witness"] = assignment_to_json(*witness);
  j["refuted_by_screen"] = refuted_by_screen;
  j["examined"] = examined;
  j["complete"] = complete;
  j["bound"] = bound;
  if (!witness) j["status"] = "not found <= " + std::to_string(bound);
  return j;
}

bool norm_screen_refutes(const RatFunc& w, const TowerSpec& ts, int bound) {
  const Field* f = ts.field;
  int q = ts.q;
  RatFunc h = compute_h(w, q);
  int oh = ord_at(h, place_t(f));
  if (oh >= 0) return false;
  int lo = -bound;
  int M = std::max(oh + 2 + (q - 1) * bound, lo + 1);
  int N = M - (q - 1) * bound;
  int U = std::max(M + bound, 1);
  // Embeddings of delta and beta_w into F((t)).
  Laurent delta0, beta0;
  Laurent ih = Laurent::expand(h.inv(), U);
  if (ts.artin_schreier()) {
    delta0 = artin_schreier_root(Laurent::expand(-RatFunc::t(f), U));
    beta0 = artin_schreier_root(ih);
  } else {
    delta0 = one_unit_root(Laurent::expand(RatFunc::t(f) + RatFunc::from_int(f, 1), U), q);
    beta0 = one_unit_root(ih + Laurent::constant(f, 1, U), q);
  }
  std::vector<Laurent> units;
  for (int r = 0; r < q; ++r)
    for (int s = 0; s < q; ++s) units.push_back((delta0.pow(r) * beta0.pow(s)).truncate(U));
  std::map<std::vector<Fe>, Laurent> xs;
  for (const RatFunc& x : enumerate_ratfuncs(f, bound)) {
    Laurent X = Laurent::expand(x, M);
    xs.emplace(X.window(lo, M), X);
  }
  auto add_windows = [&](const std::vector<Fe>& a, const std::vector<Fe>& b) {
    std::vector<Fe> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f->add(a[i], b[i]);
    return r;
  };
  std::set<std::vector<Fe>> reach{std::vector<Fe>(static_cast<std::size_t>(M - lo), 0)};
  for (auto& u : units) {
    std::set<std::vector<Fe>> part;
    for (auto& [key, X] : xs) part.insert((X * u).window(lo, M));
    std::set<std::vector<Fe>> next;
    for (auto& a : reach)
      for (auto& b : part) next.insert(add_windows(a, b));
    reach = next;
  }
  std::vector<Laurent> vals;
  for (auto& key : reach) {
    Laurent A(f, lo, M);
    for (int e = lo; e < M; ++e) A.set_coeff(e, key[static_cast<std::size_t>(e - lo)]);
    vals.push_back(A);
  }
  double tuples = 1;
  for (int i = 0; i < q; ++i) tuples *= static_cast<double>(vals.size());
  if (tuples > 4e6) return false;
  NormFormSpec nf = gen_norm_form(ts);
  int cmp_lo = std::min(oh, -q * bound);
  std::vector<Fe> target = Laurent::expand(h, N).window(cmp_lo, N);
  std::vector<std::size_t> idx(static_cast<std::size_t>(q), 0);
  for (;;) {
    Laurent sum(f, cmp_lo, N);
    for (auto& [mono, coeff] : nf.P.terms()) {
      Laurent term = Laurent::constant(f, coeff.constant_value(), N - cmp_lo + M);
      bool first = true;
      for (auto& [var, e] : mono) {
        const Laurent& A = vals[idx[static_cast<std::size_t>(std::stoi(var.substr(1)))]];
        for (int k = 0; k < e; ++k) {
          term = first ? A.scale(coeff.constant_value()) : term * A;
          first = false;
        }
      }
      sum = sum + term;
    }
    if (sum.prec() < N) throw std::logic_error("screen lost precision");
    if (sum.window(cmp_lo, N) == target) return false;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == vals.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return true;
}

NormSearchResult check_norm_solvable_bruteforce(const RatFunc& w, const TowerSpec& ts, int bound, long long limit) {
  NormSearchResult res;
  res.bound = bound;
  if (w.field() != ts.field) throw std::invalid_argument("w lies outside the tower's base field");
  if (norm_screen_refutes(w, ts, bound)) {
    res.refuted_by_screen = true;
    res.complete = true;
    return res;
  }
  const Field* f = ts.field;
  EquationSystem sys = gen_int_definition(ts);
  Assignment wa{{"w", w}};
  std::vector<Equation> eqs;
  for (auto& e : sys.equations) eqs.push_back(e.partial_eval(wa));
  std::vector<std::string> coords(sys.unknowns.begin() + 1, sys.unknowns.end());
  std::size_t n = coords.size();
  std::vector<std::vector<RatFunc>> byh;
  for (int h = 0; h <= bound; ++h) byh.push_back(ratfuncs_of_height(f, h));
  std::vector<int> heights(n, 0);
  bool stop = false;
  Assignment a;
  auto try_shape = [&]() {
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (byh[static_cast<std::size_t>(heights[i])].empty()) return;
    for (;;) {
      if (res.examined >= limit) {
        stop = true;
        return;
      }
      ++res.examined;
      for (std::size_t i = 0; i < n; ++i) a[coords[i]] = byh[static_cast<std::size_t>(heights[i])][idx[i]];
      bool ok = true;
      for (auto& e : eqs)
        if (equation_status(e, a, nullptr) != EqStatus::Holds) {
          ok = false;
          break;
        }
      if (ok) {
        Assignment full = a;
        full["w"] = w;
        if (!verify_assignment(sys, full).ok()) throw std::logic_error("norm witness does not verify");
        res.witness = full;
        stop = true;
        return;
      }
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (++idx[i] < byh[static_cast<std::size_t>(heights[i])].size()) break;
        idx[i] = 0;
        if (i == 0) return;
      }
    }
  };
  std::function<void(std::size_t, int)> shapes = [&](std::size_t i, int remaining) {
    if (stop) return;
    if (i + 1 == n) {
      if (remaining > bound) return;
      heights[i] = remaining;
      try_shape();
      return;
    }
    for (int h = 0; h <= std::min(bound, remaining) && !stop; ++h) {
      heights[i] = h;
      shapes(i + 1, remaining - h);
    }
  };
  for (int total = 0; total <= static_cast<int>(n) * bound && !stop; ++total) shapes(0, total);
  res.complete = !stop || res.witness.has_value();
  return res;
}

namespace {

const EquationSystem& cached_int_system(const TowerSpec& ts) {
  static std::mutex mu;
  static std::map<std::tuple<const Field*, int, Fe>, EquationSystem> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(ts.field, ts.q, ts.a);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, gen_int_definition(ts)).first;
  return it->second;
}

Poly embed(const Poly& x, const Field* E) { return Poly(E, x.coeffs()); }

/// numE / denE over E with norm equal to c (a function of delta over F).
std::optional<std::pair<Poly, Poly>> norm_preimage(const RatFunc& c, const Field* E, int q) {
  Poly num = Poly::constant(E, 1), den = Poly::constant(E, 1);
  for (int side = 0; side < 2; ++side) {
    const Poly& part = side == 0 ? c.num() : c.den();
    Poly& acc = side == 0 ? num : den;
    for (auto& fa : factor(part)) {
      if (fa.mult % q == 0) {
        acc *= embed(fa.poly, E).pow(static_cast<std::uint64_t>(fa.mult / q));
      } else if (fa.poly.degree() % q == 0) {
        auto parts = factor(embed(fa.poly, E));
        acc *= parts.front().poly.pow(static_cast<std::uint64_t>(fa.mult));
      } else {
        return std::nullopt;
      }
    }
  }
  Fe lc = c.num().lc();
  for (Fe g = 1; g < E->q(); ++g) {
    Fe n = g, x = g;
    for (int j = 1; j < q; ++j) {
      x = E->frob(x);
      n = E->mul(n, x);
    }
    if (n == lc) return std::make_pair(num.scale(g), den);
  }
  return std::nullopt;
}

/// Coordinates in the basis delta^r (r < q) over F[t] of a polynomial in
/// delta, reduced by delta^q = t + 1, or delta^p = delta - t when q = p.
std::vector<Poly> reduce_delta(const Poly& x, const TowerSpec& ts) {
  const Field* f = ts.field;
  int q = ts.q;
  Poly tt = Poly::var(f);
  std::vector<Poly> c;
  for (int e = 0; e <= x.degree(); ++e) c.push_back(Poly::constant(f, x.coeff(e)));
  for (int e = static_cast<int>(c.size()) - 1; e >= q; --e) {
    Poly top = c[static_cast<std::size_t>(e)];
    if (top.is_zero()) continue;
    c[static_cast<std::size_t>(e)] = Poly(f);
    if (ts.artin_schreier()) {
      c[static_cast<std::size_t>(e - q + 1)] += top;
      c[static_cast<std::size_t>(e - q)] -= top * tt;
    } else {
      c[static_cast<std::size_t>(e - q)] += top * (tt + Poly::constant(f, 1));
    }
  }
  c.resize(static_cast<std::size_t>(q), Poly(f));
  return c;
}

}  // namespace

std::optional<Assignment> construct_int_witness(const RatFunc& w, const TowerSpec& ts) {
  const Field* f = ts.field;
  int q = ts.q, p = ts.p;
  if (f->k() != 1 || w.field() != f) return std::nullopt;
  const Field* E = Field::get(p, q);
  Fe alpha = 0;
  for (Fe x = 1; x < E->q() && !alpha; ++x) {
    Fe v = ts.artin_schreier() ? E->sub(E->pow(x, q), x) : E->pow(x, q);
    if (v == ts.a) alpha = x;
  }
  Fe xi = 0;
  for (Fe x = 1; x < f->q() && !xi && !ts.artin_schreier(); ++x)
    if (f->order(x) == static_cast<std::uint64_t>(q)) xi = x;
  if (!alpha || (!xi && !ts.artin_schreier())) return std::nullopt;
  // Coordinates of E over F_p in the basis alpha^i.
  std::map<Fe, std::vector<Fe>> basis_coords;
  std::vector<Fe> b(static_cast<std::size_t>(q), 0);
  for (;;) {
    Fe v = 0, pw = 1;
    for (int i = 0; i < q; ++i) {
      v = E->add(v, E->mul(b[static_cast<std::size_t>(i)], pw));
      pw = E->mul(pw, alpha);
    }
    basis_coords[v] = b;
    std::size_t i = 0;
    while (i < b.size() && ++b[i] == static_cast<Fe>(p)) b[i++] = 0;
    if (i == b.size()) break;
  }
  RatFunc h = compute_h(w, q);
  RatFunc delta = RatFunc::t(f);
  // t as a function of delta.
  RatFunc sub = ts.artin_schreier() ? delta - delta.pow(q) : delta.pow(q) - RatFunc::from_int(f, 1);
  RatFunc one = RatFunc::from_int(f, 1);
  for (int attempt = 0; attempt < 2; ++attempt) {
    // Attempt 0 takes c = h. Attempt 1 takes c = h + 1 (Kummer) or 1 - a h
    // (Artin-Schreier) and multiplies the preimage of c by an element of norm
    // h / c: beta^(q-1) h/c, resp. prod_{j != 0} (beta - alpha - j) h/c.
    // cofactor holds its coefficients in beta^s.
    RatFunc c = h, extra = one;
    std::vector<Fe> cofactor(static_cast<std::size_t>(q), 0);
    cofactor[0] = 1;
    if (attempt == 1) {
      std::fill(cofactor.begin(), cofactor.end(), 0);
      if (ts.artin_schreier()) {
        c = one - h.scale(ts.a);
        Poly g = Poly::constant(E, 1);
        for (int j = 1; j < q; ++j)
          g *= Poly::var(E) - Poly::constant(E, E->add(alpha, static_cast<Fe>(j)));
        for (int k = 0; k < q; ++k) cofactor[static_cast<std::size_t>(k)] = g.coeff(k);
      } else {
        c = h + one;
        cofactor[static_cast<std::size_t>(q - 1)] = 1;
      }
      if (c.is_zero()) continue;
      extra = h / c;
    }
    auto pre = norm_preimage(c.compose(sub), E, q);
    if (!pre) continue;
    auto [numE, denE] = *pre;
    Poly conj = Poly::constant(E, 1);
    for (int j = 1; j < q; ++j) conj *= denE.map_coeffs_frob(j);
    Poly d2 = denE * conj;
    std::vector<Fe> dcoef;
    for (Fe x : d2.coeffs()) {
      if (x >= static_cast<Fe>(p)) throw std::logic_error("norm of the denominator left the prime field");
      dcoef.push_back(x);
    }
    Poly d(f, dcoef);
    // Rationalize over F(t): multiply by the conjugates of delta.
    Poly mult = Poly::constant(f, 1);
    for (int j = 1; j < q; ++j)
      mult *= d.compose(ts.artin_schreier() ? Poly::var(f) + Poly::constant(f, static_cast<Fe>(j))
                                             : Poly::monomial(f, f->pow(xi, j), 1));
    auto dd = reduce_delta(d * mult, ts);
    for (int r = 1; r < q; ++r)
      if (!dd[static_cast<std::size_t>(r)].is_zero())
        throw std::logic_error("rationalized denominator is not a polynomial in t");
    const Poly& den_t = dd[0];
    Assignment asg;
    for (auto& u : cached_int_system(ts).unknowns) asg[u] = RatFunc(f);
    asg["w"] = w;
    for (int s = 0; s < q; ++s) {
      Fe g = cofactor[static_cast<std::size_t>(s)];
      if (g == 0) continue;
      Poly n2 = (numE * conj).scale(g);
      std::vector<std::vector<Fe>> ncoef(static_cast<std::size_t>(q), std::vector<Fe>(n2.coeffs().size(), 0));
      for (std::size_t e = 0; e < n2.coeffs().size(); ++e) {
        const auto& bc = basis_coords.at(n2.coeffs()[e]);
        for (int i = 0; i < q; ++i) ncoef[static_cast<std::size_t>(i)][e] = bc[static_cast<std::size_t>(i)];
      }
      for (int i = 0; i < q; ++i) {
        auto ni = reduce_delta(Poly(f, ncoef[static_cast<std::size_t>(i)]) * mult, ts);
        for (int r = 0; r < q; ++r)
          asg[int_coordinate(i, r, s)] = RatFunc(ni[static_cast<std::size_t>(r)], den_t) * extra;
      }
    }
    if (verify_assignment(cached_int_system(ts), asg).ok()) return asg;
    throw std::logic_error("constructed norm witness does not verify for w = " + w.to_string());
  }
  return std::nullopt;
}

}  // namespace h10ff
