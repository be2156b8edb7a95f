#include "h10ff/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace h10ff {

Laurent::Laurent(const Field* f, int lo, int prec) : f_(f), lo_(std::min(lo, prec)), prec_(prec) {
  c_.assign(static_cast<std::size_t>(prec_ - lo_), 0);
}

Laurent Laurent::constant(const Field* f, Fe c, int prec) {
  Laurent r(f, 0, prec);
  if (prec > 0) r.c_[0] = c;
  return r;
}

Laurent Laurent::expand(const RatFunc& x, int prec) {
  const Field* f = x.field();
  if (x.is_zero()) return Laurent(f, prec, prec);
  int a = 0, b = 0;
  while (x.num().coeff(a) == 0) ++a;
  while (x.den().coeff(b) == 0) ++b;
  int v = a - b;
  Laurent r(f, v, prec);
  int n = prec - v;
  if (n <= 0) return r;
  // num / den as power series after removing the t-powers.
  Fe inv0 = f->inv(x.den().coeff(b));
  std::vector<Fe> out(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    Fe s = x.num().coeff(a + i);
    for (int j = 1; j <= i; ++j) s = f->sub(s, f->mul(x.den().coeff(b + j), out[static_cast<std::size_t>(i - j)]));
    out[static_cast<std::size_t>(i)] = f->mul(s, inv0);
  }
  r.c_ = std::move(out);
  return r;
}

Fe Laurent::coeff(int e) const {
  if (e >= prec_) throw std::out_of_range("coefficient beyond the known precision");
  if (e < lo_) return 0;
  return c_[static_cast<std::size_t>(e - lo_)];
}

void Laurent::set_coeff(int e, Fe c) {
  if (e < lo_ || e >= prec_) throw std::out_of_range("coefficient outside the stored window");
  c_[static_cast<std::size_t>(e - lo_)] = c;
}

int Laurent::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return lo_ + static_cast<int>(i);
  return prec_;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r(f_, std::min(lo_, o.lo_), std::min(prec_, o.prec_));
  for (int e = r.lo_; e < r.prec_; ++e) r.set_coeff(e, f_->add(coeff(e), o.coeff(e)));
  return r;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& c : r.c_) c = f_->neg(c);
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
  int va = valuation(), vb = o.valuation();
  int prec = std::min(prec_ + vb, o.prec_ + va);
  Laurent r(f_, va + vb, prec);
  for (int i = va; i < prec_; ++i) {
    Fe a = coeff(i);
    if (a == 0) continue;
    for (int j = vb; j < o.prec_ && i + j < prec; ++j) {
      Fe b = o.coeff(j);
      if (b == 0) continue;
      r.set_coeff(i + j, f_->add(r.coeff(i + j), f_->mul(a, b)));
    }
  }
  return r;
}

Laurent Laurent::scale(Fe c) const {
  Laurent r = *this;
  for (auto& x : r.c_) x = f_->mul(x, c);
  return r;
}

Laurent Laurent::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of a series");
  if (e == 0) return constant(f_, 1, std::max(prec_, 1));
  Laurent r = *this;
  for (int i = 1; i < e; ++i) r = r * *this;
  return r;
}

Laurent Laurent::truncate(int prec) const {
  if (prec > prec_) throw std::invalid_argument("cannot raise the precision of a series");
  Laurent r(f_, lo_, prec);
  for (int e = r.lo_; e < prec; ++e) r.set_coeff(e, coeff(e));
  return r;
}

std::vector<Fe> Laurent::window(int lo, int hi) const {
  std::vector<Fe> w;
  for (int e = lo; e < hi; ++e) w.push_back(coeff(e));
  return w;
}

Laurent one_unit_root(const Laurent& b, int q) {
  const Field* f = b.field();
  Fe qq = f->from_int(q);
  if (qq == 0) throw std::invalid_argument("root index divisible by the characteristic");
  if (b.valuation() < 0 || b.coeff(0) != 1) throw std::invalid_argument("not a one-unit");
  int n = b.prec();
  Laurent y = Laurent::constant(f, 1, n);
  Fe invq = f->inv(qq);
  for (int e = 1; e < n; ++e) {
    // With y_e = 0 the coefficient of t^e in y^q misses exactly q y_e.
    Laurent yq = y.truncate(e + 1).pow(q);
    y.set_coeff(e, f->mul(f->sub(b.coeff(e), yq.coeff(e)), invq));
  }
  return y;
}

Laurent artin_schreier_root(const Laurent& b) {
  const Field* f = b.field();
  if (b.valuation() < 1) throw std::invalid_argument("Artin-Schreier root needs b = O(t)");
  int n = b.prec();
  Laurent y(f, 0, n);
  for (int i = 0; i < n; ++i) y = (y.pow(f->p()) - b).truncate(n);
  return y;
}

}  // namespace h10ff
