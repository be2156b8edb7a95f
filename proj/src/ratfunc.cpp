#include "h10ff/ratfunc.hpp"

#include <algorithm>

#include "h10ff/expr_parser.hpp"

namespace h10ff {

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw FieldError("rational function with zero denominator");
  const Field* f = den.field();
  if (num.field() && num.field() != f) throw FieldError("field mismatch");
  if (num.is_zero()) {
    num_ = Poly(f);
    den_ = Poly::constant(f, 1);
    return;
  }
  Poly g = gcd(num, den);
  Poly n = num / g;
  Poly d = den / g;
  Fe inv = f->inv(d.lc());
  num_ = n.scale(inv);
  den_ = d.scale(inv);
}

RatFunc RatFunc::t_pow(const Field* f, long long n) {
  if (n >= 0) return RatFunc(Poly::monomial(f, 1, static_cast<int>(n)));
  return RatFunc(Poly::constant(f, 1), Poly::monomial(f, 1, static_cast<int>(-n)));
}

Fe RatFunc::constant_value() const {
  if (!is_constant()) throw FieldError("not a constant: " + to_string());
  return num_.coeff(0);
}

namespace {

void same_field(const RatFunc& a, const RatFunc& b) {
  if (a.field() != b.field()) throw FieldError("field mismatch in rational function arithmetic");
}

}  // namespace

RatFunc RatFunc::operator+(const RatFunc& o) const {
  same_field(*this, o);
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  same_field(*this, o);
  if (den_ == o.den_) return RatFunc(num_ - o.num_, den_);
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -num_;
  return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  same_field(*this, o);
  if (is_zero() || o.is_zero()) return RatFunc(field());
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  RatFunc r;
  r.num_ = (num_ / g1) * (o.num_ / g2);
  Poly d = (den_ / g2) * (o.den_ / g1);
  // Both dens are monic, so d is monic already.
  r.den_ = d;
  return r;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw FieldError("division by zero in F_q(t)");
  RatFunc r;
  Fe c = field()->inv(num_.lc());
  r.num_ = den_.scale(c);
  r.den_ = num_.scale(c);
  return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

RatFunc RatFunc::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(static_cast<std::uint64_t>(e));
  r.den_ = den_.pow(static_cast<std::uint64_t>(e));
  if (r.num_.is_zero()) return RatFunc(field());
  return r;
}

RatFunc RatFunc::scale(Fe c) const {
  if (c == 0) return RatFunc(field());
  RatFunc r = *this;
  r.num_ = num_.scale(c);
  return r;
}

RatFunc RatFunc::frobenius_pow(int s) const {
  RatFunc r;
  r.num_ = num_.frobenius_pow(s);
  r.den_ = den_.frobenius_pow(s);
  return r;
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::compose(const RatFunc& g) const {
  const Field* f = field();
  auto eval_poly = [&](const Poly& p) {
    RatFunc acc(f);
    for (int i = p.degree(); i >= 0; --i) acc = acc * g + constant(f, p.coeff(i));
    return acc;
  };
  return eval_poly(num_) / eval_poly(den_);
}

RatFunc RatFunc::map_coeffs_frob(int j) const { return RatFunc(num_.map_coeffs_frob(j), den_.map_coeffs_frob(j)); }

int RatFunc::height() const {
  if (is_zero()) return 0;
  return std::max(num_.degree(), den_.degree());
}

bool RatFunc::operator<(const RatFunc& o) const {
  if (num_ != o.num_) return num_ < o.num_;
  return den_ < o.den_;
}

std::string RatFunc::to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

namespace {

struct RatBuilder {
  const Field* f;
  RatFunc number(long long n) { return RatFunc::from_int(f, n); }
  RatFunc variable(char c, std::size_t pos) {
    if (c == 't') return RatFunc::t(f);
    if (c == 'g') return RatFunc::constant(f, f->gen());
    throw ParseError(std::string("unknown symbol '") + c + "'", pos);
  }
  RatFunc add(const RatFunc& a, const RatFunc& b) { return a + b; }
  RatFunc sub(const RatFunc& a, const RatFunc& b) { return a - b; }
  RatFunc mul(const RatFunc& a, const RatFunc& b) { return a * b; }
  RatFunc div(const RatFunc& a, const RatFunc& b, std::size_t pos) {
    if (b.is_zero()) throw ParseError("division by zero", pos);
    return a / b;
  }
  RatFunc neg(const RatFunc& a) { return -a; }
  RatFunc power(const RatFunc& a, long long e, std::size_t pos) {
    if (a.is_zero() && e < 0) throw ParseError("division by zero", pos);
    return a.pow(e);
  }
};

}  // namespace

RatFunc RatFunc::parse(const Field* f, const std::string& text) {
  RatBuilder b{f};
  ExprParser<RatBuilder> parser(text, b);
  return parser.parse();
}

Place Place::finite(const Poly& p) {
  if (p.degree() < 1 || p.lc() != 1) throw FieldError("place must be a monic irreducible polynomial");
  if (!is_irreducible(p)) throw FieldError("place polynomial is reducible: " + p.to_string());
  return from_irreducible(p);
}

Place Place::from_irreducible(const Poly& p) {
  Place pl;
  pl.infinite_ = false;
  pl.poly_ = p;
  return pl;
}

Place Place::parse(const Field* f, const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s == "inf" || s == "infinity") return infinity();
  RatFunc r = RatFunc::parse(f, text);
  if (!r.is_polynomial()) throw FieldError("place must be a polynomial: " + text);
  return finite(r.num());
}

bool Place::operator<(const Place& o) const {
  if (infinite_ != o.infinite_) return !infinite_;
  if (infinite_) return false;
  return poly_ < o.poly_;
}

int ord_at(const Poly& x, const Place& P) {
  if (x.is_zero()) throw FieldError("order of zero is undefined");
  if (P.is_infinite()) return -x.degree();
  int n = 0;
  Poly cur = x;
  for (;;) {
    Poly q, r;
    Poly::divmod(cur, P.poly(), q, r);
    if (!r.is_zero()) return n;
    cur = std::move(q);
    ++n;
  }
}

int ord_at(const RatFunc& x, const Place& P) {
  if (x.is_zero()) throw FieldError("order of zero is undefined");
  if (P.is_infinite()) return x.den().degree() - x.num().degree();
  return ord_at(x.num(), P) - ord_at(x.den(), P);
}

Divisor divisor_of(const RatFunc& x) {
  if (x.is_zero()) throw FieldError("divisor of zero is undefined");
  Divisor d;
  for (auto& f : factor(x.num())) d[Place::from_irreducible(f.poly)] += f.mult;
  for (auto& f : factor(x.den())) d[Place::from_irreducible(f.poly)] -= f.mult;
  int inf = x.den().degree() - x.num().degree();
  if (inf != 0) d[Place::infinity()] = inf;
  return d;
}

Divisor zero_divisor(const RatFunc& x) {
  Divisor out;
  for (auto& [P, m] : divisor_of(x))
    if (m > 0) out[P] = m;
  return out;
}

Divisor pole_divisor(const RatFunc& x) {
  Divisor out;
  for (auto& [P, m] : divisor_of(x))
    if (m < 0) out[P] = -m;
  return out;
}

int divisor_degree(const Divisor& D) {
  int s = 0;
  for (auto& [P, m] : D) s += m * P.degree();
  return s;
}

Divisor divisor_add(const Divisor& a, const Divisor& b, int sign_b) {
  Divisor out = a;
  for (auto& [P, m] : b) {
    int v = (out[P] += sign_b * m);
    if (v == 0) out.erase(P);
  }
  return out;
}

bool is_effective(const Divisor& D) {
  return std::all_of(D.begin(), D.end(), [](const auto& e) { return e.second >= 0; });
}

int local_derivation_order(const Place& P) {
  // For a uniformizer pi at P, return ord_P(dt/dpi) = -ord_P(dpi/dt).
  if (P.is_infinite()) {
    // pi = 1/t; the computation does not depend on the constant field.
    RatFunc dpi = RatFunc::t_pow(Field::get(2), -1).derivative();
    return -ord_at(dpi, P);
  }
  RatFunc dpi(P.poly().derivative());
  return -ord_at(dpi, P);
}

bool is_squarefree_away_from(const RatFunc& x, const std::vector<Place>& excluded) {
  for (auto& [P, m] : divisor_of(x)) {
    if (std::find(excluded.begin(), excluded.end(), P) != excluded.end()) continue;
    if (m > 1 || m < -1) return false;
  }
  return true;
}

bool is_pth_power_divisor(const Divisor& D, int e) {
  return std::all_of(D.begin(), D.end(), [e](const auto& x) { return x.second % e == 0; });
}

}  // namespace h10ff
