#include "h10ff/multipoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace h10ff {

MultiPoly::MultiPoly(const RatFunc& c) : f_(c.field()) {
  if (!c.is_zero()) terms_[Monomial{}] = c;
}

MultiPoly MultiPoly::var(const Field* f, const std::string& name) {
  MultiPoly p(f);
  p.terms_[Monomial{{name, 1}}] = RatFunc::from_int(f, 1);
  return p;
}

int MultiPoly::degree() const {
  int d = 0;
  for (auto& [m, c] : terms_) {
    int s = 0;
    for (auto& [v, e] : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

void MultiPoly::add_term(const Monomial& m, const RatFunc& c) {
  if (c.is_zero()) return;
  if (!f_) f_ = c.field();
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  if (!r.f_) r.f_ = o.f_;
  for (auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  if (!r.f_) r.f_ = o.f_;
  for (auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r(f_ ? f_ : o.f_);
  for (auto& [m1, c1] : terms_) {
    for (auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (auto& [v, e] : m2) m[v] += e;
      r.add_term(m, c1 * c2);
    }
  }
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = MultiPoly(RatFunc::from_int(f_, 1));
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::set<std::string> MultiPoly::variables() const {
  std::set<std::string> out;
  for (auto& [m, c] : terms_)
    for (auto& [v, e] : m) out.insert(v);
  return out;
}

RatFunc MultiPoly::evaluate(const Assignment& a) const {
  RatFunc acc(f_);
  for (auto& [m, c] : terms_) {
    RatFunc term = c;
    for (auto& [v, e] : m) {
      auto it = a.find(v);
      if (it == a.end()) throw std::invalid_argument("unassigned unknown: " + v);
      term = term * it->second.pow(e);
      if (term.is_zero()) break;
    }
    acc = acc + term;
  }
  return acc;
}

MultiPoly MultiPoly::partial_eval(const Assignment& a) const {
  MultiPoly r(f_);
  for (auto& [m, c] : terms_) {
    RatFunc coeff = c;
    Monomial rest;
    for (auto& [v, e] : m) {
      auto it = a.find(v);
      if (it == a.end())
        rest[v] = e;
      else
        coeff = coeff * it->second.pow(e);
    }
    r.add_term(rest, coeff);
  }
  return r;
}

MultiPoly MultiPoly::substitute(const std::string& name, const MultiPoly& value) const {
  MultiPoly r(f_);
  for (auto& [m, c] : terms_) {
    Monomial rest;
    int e = 0;
    for (auto& [v, ex] : m) {
      if (v == name)
        e = ex;
      else
        rest[v] = ex;
    }
    MultiPoly term(f_);
    term.add_term(rest, c);
    if (e > 0) term = term * value.pow(e);
    r = r + term;
  }
  return r;
}

MultiPoly MultiPoly::rename(const std::function<std::string(const std::string&)>& fn) const {
  MultiPoly r(f_);
  for (auto& [m, c] : terms_) {
    Monomial nm;
    for (auto& [v, e] : m) nm[fn(v)] += e;
    r.add_term(nm, c);
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string coef;
    if (!c.is_one() || m.empty())
      coef = c.is_polynomial() ? "(" + c.num().to_string() + ")" : c.to_string();
    std::string mono;
    for (auto& [v, e] : m) {
      if (!mono.empty()) mono += "*";
      mono += v;
      if (e != 1) mono += "^" + std::to_string(e);
    }
    out += coef.empty() ? mono : mono.empty() ? coef : coef + "*" + mono;
  }
  return out;
}

}  // namespace h10ff
