#include "h10ff/poly.hpp"

#include <algorithm>
#include <random>

namespace h10ff {

Poly::Poly(const Field* f, std::vector<Fe> coeffs) : f_(f), c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Field* f, Fe c) { return Poly(f, {c}); }

Poly Poly::monomial(const Field* f, Fe c, int degree) {
  if (c == 0) return Poly(f);
  std::vector<Fe> v(degree + 1, 0);
  v[degree] = c;
  return Poly(f, std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
  const Field* f = f_ ? f_ : o.f_;
  std::vector<Fe> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Fe a = i < c_.size() ? c_[i] : 0;
    Fe b = i < o.c_.size() ? o.c_[i] : 0;
    r[i] = f->add(a, b);
  }
  return Poly(f, std::move(r));
}

Poly Poly::operator-() const {
  std::vector<Fe> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_->neg(c_[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  const Field* f = f_ ? f_ : o.f_;
  std::vector<Fe> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Fe a = i < c_.size() ? c_[i] : 0;
    Fe b = i < o.c_.size() ? o.c_[i] : 0;
    r[i] = f->sub(a, b);
  }
  return Poly(f, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  const Field* f = f_ ? f_ : o.f_;
  if (c_.empty() || o.c_.empty()) return Poly(f);
  std::vector<Fe> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f->add(r[i + j], f->mul(c_[i], o.c_[j]));
  }
  return Poly(f, std::move(r));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  if (b.is_zero()) throw FieldError("polynomial division by zero");
  const Field* f = b.f_;
  std::vector<Fe> r = a.c_;
  int db = b.degree();
  int da = a.degree();
  if (da < db) {
    quot = Poly(f);
    rem = a;
    if (!rem.f_) rem.f_ = f;
    return;
  }
  std::vector<Fe> q(da - db + 1, 0);
  Fe inv = f->inv(b.lc());
  for (int i = da; i >= db; --i) {
    Fe c = r[i];
    if (c == 0) continue;
    c = f->mul(c, inv);
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = f->sub(r[i - db + j], f->mul(c, b.c_[j]));
  }
  r.resize(db);
  quot = Poly(f, std::move(q));
  rem = Poly(f, std::move(r));
}

Poly Poly::operator/(const Poly& o) const {
  Poly q, r;
  divmod(*this, o, q, r);
  return q;
}

Poly Poly::operator%(const Poly& o) const {
  Poly q, r;
  divmod(*this, o, q, r);
  return r;
}

Poly Poly::scale(Fe c) const {
  std::vector<Fe> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_->mul(c_[i], c);
  return Poly(f_, std::move(r));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scale(f_->inv(lc()));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_);
  std::vector<Fe> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_->mul(c_[i], f_->from_int(static_cast<long long>(i)));
  return Poly(f_, std::move(r));
}

Fe Poly::eval(Fe x) const {
  Fe acc = 0;
  for (int i = degree(); i >= 0; --i) acc = f_->add(f_->mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::pow(std::uint64_t e) const {
  Poly result = constant(f_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::frobenius() const {
  if (c_.empty()) return *this;
  int p = f_->p();
  std::vector<Fe> r(static_cast<std::size_t>(degree()) * p + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i * p] = f_->frob(c_[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::frobenius_pow(int s) const {
  Poly r = *this;
  for (int i = 0; i < s; ++i) r = r.frobenius();
  return r;
}

Poly Poly::compose(const Poly& g) const {
  Poly acc(f_);
  for (int i = degree(); i >= 0; --i) acc = acc * g + constant(f_, c_[i]);
  return acc;
}

Poly Poly::powmod(std::uint64_t e, const Poly& m) const {
  Poly result = constant(f_, 1) % m;
  Poly base = *this % m;
  while (e > 0) {
    if (e & 1) result = (result * base) % m;
    e >>= 1;
    if (e) base = (base * base) % m;
  }
  return result;
}

Poly Poly::map_coeffs_frob(int j) const {
  std::vector<Fe> r = c_;
  for (auto& c : r)
    for (int i = 0; i < j; ++i) c = f_->frob(c);
  return Poly(f_, std::move(r));
}

bool Poly::operator<(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

std::string Poly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    Fe c = c_[i];
    if (c == 0) continue;
    std::string term;
    if (i == 0) {
      term = f_->to_string(c);
    } else {
      if (c != 1) {
        std::string cs = f_->to_string(c);
        term = f_->is_monomial_text(c) ? cs + "*" : "(" + cs + ")*";
      }
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& u) {
  const Field* f = a.field() ? a.field() : b.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(f, 1), s1(f);
  Poly u0(f), u1 = Poly::constant(f, 1);
  while (!r1.is_zero()) {
    Poly q, r;
    Poly::divmod(r0, r1, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.is_zero()) {
    s = Poly(f);
    u = Poly(f);
    return r0;
  }
  Fe inv = f->inv(r0.lc());
  s = s0.scale(inv);
  u = u0.scale(inv);
  return r0.scale(inv);
}

namespace {

// g(t) with g(t^p) = f(t), coefficients replaced by their p-th roots.
Poly pth_root_poly(const Poly& f) {
  const Field* F = f.field();
  int p = F->p();
  std::vector<Fe> r(f.degree() / p + 1, 0);
  for (int i = 0; i <= f.degree(); i += p) r[i / p] = F->pth_root(f.coeff(i));
  return Poly(F, std::move(r));
}

std::vector<Factor> distinct_degree(Poly f) {
  const Field* F = f.field();
  std::vector<Factor> out;
  Poly x = Poly::var(F);
  Poly h = x % f;
  int i = 1;
  while (f.degree() >= 2 * i) {
    h = h.powmod(F->q(), f);
    Poly g = gcd(h - x, f);
    if (!g.is_one()) {
      out.push_back({g, i});
      f = f / g;
      h = h % f;
    }
    ++i;
  }
  if (f.degree() > 0) out.push_back({f, f.degree()});
  return out;
}

void equal_degree(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const Field* F = g.field();
  std::uint64_t q = F->q();
  for (;;) {
    std::vector<Fe> coeffs(g.degree());
    for (auto& c : coeffs) c = static_cast<Fe>(rng() % q);
    Poly a(F, coeffs);
    if (a.is_constant()) continue;
    Poly b(F);
    if (F->p() == 2) {
      // Absolute trace to F_2 of the residue ring element.
      int terms = F->k() * d;
      Poly cur = a % g;
      b = cur;
      for (int i = 1; i < terms; ++i) {
        cur = (cur * cur) % g;
        b = b + cur;
      }
    } else {
      Poly cur = a % g;
      Poly prod = cur;
      for (int j = 1; j < d; ++j) {
        cur = cur.powmod(q, g);
        prod = (prod * cur) % g;
      }
      b = prod.powmod((q - 1) / 2, g) - Poly::constant(F, 1);
    }
    Poly h = gcd(b, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> squarefree_decomposition(const Poly& f0) {
  std::vector<Factor> out;
  if (f0.degree() < 1) return out;
  Poly f = f0.monic();
  const Field* F = f.field();
  Poly one = Poly::constant(F, 1);
  Poly c = gcd(f, f.derivative());
  Poly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (!z.is_one()) out.push_back({z, i});
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one()) {
    Poly r = pth_root_poly(c);
    for (auto& fr : squarefree_decomposition(r)) out.push_back({fr.poly, fr.mult * F->p()});
  }
  return out;
}

std::vector<Factor> factor(const Poly& f) {
  std::vector<Factor> out;
  if (f.degree() < 1) return out;
  std::mt19937_64 rng(0x5eedf00dULL);
  for (auto& sq : squarefree_decomposition(f)) {
    for (auto& dd : distinct_degree(sq.poly)) {
      std::vector<Poly> parts;
      equal_degree(dd.poly, dd.mult, rng, parts);
      for (auto& p : parts) out.push_back({p.monic(), sq.mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
  // Merge equal factors that arrived from different square-free layers.
  std::vector<Factor> merged;
  for (auto& fa : out) {
    if (!merged.empty() && merged.back().poly == fa.poly)
      merged.back().mult += fa.mult;
    else
      merged.push_back(fa);
  }
  return merged;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  auto fs = factor(f);
  return fs.size() == 1 && fs[0].mult == 1;
}

std::vector<Poly> monic_polys(const Field* f, int d) {
  std::vector<Poly> out;
  std::uint64_t q = f->q();
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) count *= q;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Fe> c(d + 1, 0);
    std::uint64_t v = idx;
    for (int i = 0; i < d; ++i) {
      c[i] = static_cast<Fe>(v % q);
      v /= q;
    }
    c[d] = 1;
    out.emplace_back(f, std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace h10ff
