#include "h10ff/witness.hpp"

#include <numeric>
#include <stdexcept>

namespace h10ff {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int a_for(int p) { return p > 2 ? 1 : 2; }

/// c^(p^n).
Fe frob_n(const Field* f, Fe c, long long n) {
  for (long long i = 0; i < n % f->k(); ++i) c = f->frob(c);
  return c;
}

Assignment zeros_for(const EquationSystem& sys) {
  Assignment a;
  for (auto& u : sys.unknowns) a[u] = RatFunc(sys.field);
  return a;
}

void require_template(const EquationSystem& sys, const std::string& name) {
  if (!sys.meta.contains("template") || sys.meta["template"] != name)
    throw std::invalid_argument("system was not generated by the " + name + " template");
}

RatFunc checked_div(const RatFunc& n, const RatFunc& d, const std::string& what) {
  if (d.is_zero()) throw std::invalid_argument("vanishing denominator in " + what);
  return n / d;
}

}  // namespace

RatFunc artin_schreier_witness(const RatFunc& x, long long pa, int s) {
  if (pa < 2) throw std::invalid_argument("pa must be at least 2");
  if (s < 0) throw std::invalid_argument("s must be nonnegative");
  RatFunc v(x.field());
  RatFunc term = x;
  for (int k = 0; k < s; ++k) {
    v += term;
    term = term.pow(pa);
  }
  return v;
}

Json VerifyResult::to_json() const {
  Json j;
  switch (verdict) {
    case Verdict::Satisfied:
      j["verdict"] = "satisfied";
      break;
    case Verdict::Violated:
      j["verdict"] = "violated";
      j["equation"] = equation;
      break;
    case Verdict::SpuriousDenominator:
      j["verdict"] = "spurious_denominator";
      j["equation"] = equation;
      j["denominator"] = denominator;
      break;
  }
  return j;
}

EqStatus equation_status(const Equation& e, const Assignment& a, std::string* denominator) {
  switch (e.kind()) {
    case Equation::Kind::Leaf: {
      for (auto& c : e.cleared())
        if (c.evaluate(a).is_zero()) {
          if (denominator) *denominator = c.to_string();
          return EqStatus::Spurious;
        }
      return e.poly().evaluate(a).is_zero() ? EqStatus::Holds : EqStatus::Violated;
    }
    case Equation::Kind::Product: {
      bool spurious = false;
      std::string first;
      for (auto& c : e.children()) {
        std::string d;
        EqStatus s = equation_status(c, a, &d);
        if (s == EqStatus::Holds) return s;
        if (s == EqStatus::Spurious && !spurious) {
          spurious = true;
          first = d;
        }
      }
      if (spurious && denominator) *denominator = first;
      return spurious ? EqStatus::Spurious : EqStatus::Violated;
    }
    case Equation::Kind::Combine: {
      bool spurious = false;
      std::string first;
      for (auto& c : e.children()) {
        std::string d;
        EqStatus s = equation_status(c, a, &d);
        if (s == EqStatus::Violated) return s;
        if (s == EqStatus::Spurious && !spurious) {
          spurious = true;
          first = d;
        }
      }
      if (spurious && denominator) *denominator = first;
      return spurious ? EqStatus::Spurious : EqStatus::Holds;
    }
  }
  return EqStatus::Violated;
}

VerifyResult verify_assignment(const EquationSystem& sys, const Assignment& a) {
  for (auto& u : sys.unknowns)
    if (!a.count(u)) throw std::invalid_argument("missing unknown: " + u);
  for (auto& [name, value] : a) {
    if (!sys.has_unknown(name)) throw std::invalid_argument("undeclared unknown: " + name);
    if (value.field() != sys.field) throw std::invalid_argument("value of " + name + " lies in another field");
  }
  VerifyResult r;
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    std::string d;
    EqStatus s = equation_status(sys.equations[i], a, &d);
    if (s == EqStatus::Holds) continue;
    r.equation = static_cast<int>(i);
    if (s == EqStatus::Violated) {
      r.verdict = Verdict::Violated;
    } else {
      r.verdict = Verdict::SpuriousDenominator;
      r.denominator = d;
    }
    return r;
  }
  return r;
}

Assignment build_base_pair_witness(const Field* f, int s) {
  long long pa = ipow(f->p(), a_for(f->p()));
  RatFunc t = RatFunc::t(f);
  Assignment a;
  a["w"] = t.frobenius_pow(a_for(f->p()) * s);
  a["u"] = artin_schreier_witness(t.inv(), pa, s);
  a["v"] = artin_schreier_witness(t, pa, s);
  return a;
}

Assignment build_pk_power_witness(int p, int s, const ConstantSet& cs, const EquationSystem& sys) {
  require_template(sys, "pk_power_of_t");
  const Field* f = sys.field;
  if (f->p() != p || cs.field != f) throw std::invalid_argument("field mismatch");
  int a = a_for(p);
  long long pa = ipow(p, a);
  Assignment asg = zeros_for(sys);
  Assignment base = build_base_pair_witness(f, s);
  asg.insert_or_assign("w", base["w"]);
  asg.insert_or_assign("u", base["u"]);
  asg.insert_or_assign("v", base["v"]);
  RatFunc t = RatFunc::t(f);
  long long shift = static_cast<long long>(a) * s;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (i == j) continue;
      int jb = static_cast<int>(shift % cs.r(i)), jbp = static_cast<int>(shift % cs.r(j));
      // c^(p^(as)) must lie in the orbit at the shifted index.
      if (cs.d(i, jb) != frob_n(f, cs.elements[i], shift) ||
          cs.d(j, jbp) != frob_n(f, cs.elements[j], shift))
        throw std::logic_error("orbit does not realise the Frobenius shift");
      std::string un = pk_pair_unknown('u', i, j, jb, jbp), vn = pk_pair_unknown('v', i, j, jb, jbp);
      if (!sys.has_unknown(un) || !sys.has_unknown(vn)) throw std::invalid_argument("system lacks pair unknowns");
      RatFunc x = (t - RatFunc::constant(f, cs.elements[i])) / (t - RatFunc::constant(f, cs.elements[j]));
      asg[un] = artin_schreier_witness(x, pa, s);
      asg[vn] = artin_schreier_witness(x.inv(), pa, s);
    }
  return asg;
}

Assignment build_d_system_witness(const RatFunc& u, int p, int a, int s, const ConstantSet& cs,
                                  const EquationSystem& sys) {
  require_template(sys, "d_system");
  const Field* f = sys.field;
  if (f->p() != p || cs.field != f || u.field() != f) throw std::invalid_argument("field mismatch");
  if (u.is_zero()) throw std::invalid_argument("u = 0 collides with the cleared denominator u");
  for (Fe c : cs.elements)
    if (u.is_constant() && u.constant_value() == f->neg(c))
      throw std::invalid_argument("u = -" + f->to_string(c) + " collides with the shift by constant " +
                                  f->to_string(c));
  long long pa = ipow(p, a);
  long long shift = static_cast<long long>(a) * s;
  Assignment asg = zeros_for(sys);
  RatFunc v = u.frobenius_pow(static_cast<int>(shift));
  asg["u"] = u;
  asg["v"] = v;
  RatFunc t = RatFunc::t(f);
  std::size_t n = cs.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (i == l) continue;
      RatFunc uu = checked_div(u + RatFunc::constant(f, cs.elements[i]), u + RatFunc::constant(f, cs.elements[l]),
                               "u + c_l");
      asg[d_uu(i, l)] = uu;
      int ji = static_cast<int>(shift % cs.r(i)), jl = static_cast<int>(shift % cs.r(l));
      if (cs.d(i, ji) != frob_n(f, cs.elements[i], shift))
        throw std::logic_error("orbit does not realise the Frobenius shift");
      RatFunc vv = uu.frobenius_pow(static_cast<int>(shift));
      asg[d_vv(i, ji, l, jl)] = vv;
      for (int m = 0; m <= 1; ++m)
        for (int z : {1, -1}) {
          RatFunc base = uu.pow(2 * z) * t.pow(m);
          asg[d_mu(i, ji, l, jl, z, m)] = artin_schreier_witness(base, pa, s);
        }
      asg[d_sigma(i, ji, l, jl)] = artin_schreier_witness(uu, pa, s);
    }
  asg["lambda_p"] = artin_schreier_witness(u, pa, s);
  asg["lambda_n"] = artin_schreier_witness(u.inv(), pa, s);
  return asg;
}

namespace {

void fill_e(Assignment& asg, const RatFunc& x, const RatFunc& y, const std::string& suffix, int s) {
  const Field* f = x.field();
  int p = f->p();
  RatFunc t = RatFunc::t(f), one = RatFunc::from_int(f, 1), tP = t.frobenius_pow(s);
  RatFunc xp = x.frobenius_pow(1), yp = y.frobenius_pow(1);
  asg["u" + suffix] = checked_div(xp + t, xp - t, "x^p - t");
  asg["ut" + suffix] = checked_div(t * xp + one, t * xp - one, "t x^p - 1");
  asg["v" + suffix] = checked_div(yp + tP, yp - tP, "y^p - t^(p^s)");
  asg["vt" + suffix] = checked_div(tP * yp + one, tP * yp - one, "t^(p^s) y^p - 1");
  (void)p;
}

}  // namespace

Assignment build_e_witness(const RatFunc& x, int s) {
  const Field* f = x.field();
  if (f->p() == 2) throw std::invalid_argument("E witness needs p > 2 (use E2)");
  Assignment asg;
  RatFunc y = x.frobenius_pow(s);
  asg["x"] = x;
  asg["y"] = y;
  fill_e(asg, x, y, "", s);
  return asg;
}

Assignment build_e2_witness(const RatFunc& x, int s) {
  const Field* f = x.field();
  if (f->p() != 2) throw std::invalid_argument("E2 witness needs characteristic 2");
  RatFunc t = RatFunc::t(f), one = RatFunc::from_int(f, 1), t2 = t * t;
  RatFunc tP = t.frobenius_pow(s), t2P = tP * tP;
  RatFunc y = x.frobenius_pow(s);
  RatFunc x2 = x * x, y2 = y * y;
  Assignment asg;
  asg["x"] = x;
  asg["y"] = y;
  asg["u"] = checked_div(x2 + t2 + t, x2 + t, "x^2 + t");
  asg["ut"] = checked_div(t2 * x2 + t + one, t2 * x2 + t, "t^2 x^2 + t");
  asg["v"] = checked_div(y2 + t2P + tP, y2 + tP, "y^2 + t^(2^s)");
  asg["vt"] = checked_div(t2P * y2 + one + tP, t2P * y2 + tP, "t^(2^(s+1)) y^2 + t^(2^s)");
  return asg;
}

Assignment build_full_pk_pair_witness(const RatFunc& x, int s) {
  const Field* f = x.field();
  if (f->p() == 2) return build_e2_witness(x, s);
  Assignment asg = build_e_witness(x, s);
  RatFunc one = RatFunc::from_int(f, 1);
  fill_e(asg, x + one, asg["y"] + one, "1", s);
  return asg;
}

int constant_subfield_degree(const ConstantSet& cs) {
  int d = 1;
  for (std::size_t i = 0; i < cs.size(); ++i) d = std::lcm(d, cs.r(i));
  return d;
}

bool coefficients_in_subfield(const Assignment& a, int d) {
  for (auto& [name, x] : a) {
    const Field* f = x.field();
    for (const Poly* part : {&x.num(), &x.den()})
      for (Fe c : part->coeffs()) {
        Fe y = c;
        for (int i = 0; i < d; ++i) y = f->frob(y);
        if (y != c) return false;
      }
  }
  return true;
}

}  // namespace h10ff
