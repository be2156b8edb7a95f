#include "h10ff/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "h10ff/expr_parser.hpp"

namespace h10ff {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Dense polynomials over F_p as int vectors, low degree first.
using IP = std::vector<int>;

void trim(IP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

IP mod_poly(IP a, const IP& m, int p) {
  trim(a);
  int dm = static_cast<int>(m.size()) - 1;
  int lc_inv = inv_mod(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int shift = static_cast<int>(a.size()) - 1 - dm;
    int c = a.back() * lc_inv % p;
    for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

IP mulmod(const IP& a, const IP& b, const IP& m, int p) {
  if (a.empty() || b.empty()) return {};
  IP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return mod_poly(r, m, p);
}

IP gcd_poly(IP a, IP b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    IP r = mod_poly(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

// x^(p^n) mod m by repeated p-th powering.
IP frob_x(int n, const IP& m, int p) {
  IP r = mod_poly(IP{0, 1}, m, p);
  for (int i = 0; i < n; ++i) {
    IP acc{1};
    IP base = r;
    for (int e = p; e > 0; e >>= 1) {
      if (e & 1) acc = mulmod(acc, base, m, p);
      base = mulmod(base, base, m, p);
    }
    r = acc;
  }
  return r;
}

std::vector<int> prime_factors(long long n) {
  std::vector<int> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<int>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

struct ModulusEntry {
  int p;
  int k;
  std::vector<int> coeffs;
};

// Lexicographically least monic irreducible moduli for 1 < k and p^k <= 729
// (coefficients low to high). Degree one always uses t.
const std::vector<ModulusEntry>& modulus_table() {
  static const std::vector<ModulusEntry> table = {
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 0, 0, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 1, 0, 1, 1, 0, 0, 0, 1}},
    {2, 9, {1, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 2, {1, 0, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 1, 0, 0, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 1, 0, 0, 0, 0, 1}},
    {5, 2, {2, 0, 1}},
    {5, 3, {1, 1, 0, 1}},
    {5, 4, {2, 0, 0, 0, 1}},
    {7, 2, {1, 0, 1}},
    {7, 3, {2, 0, 0, 1}},
    {11, 2, {1, 0, 1}},
    {13, 2, {2, 0, 1}},
    {17, 2, {3, 0, 1}},
    {19, 2, {1, 0, 1}},
    {23, 2, {1, 0, 1}},
  };
  return table;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<int, std::vector<int>>, std::unique_ptr<Field>> fields;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

bool Field::is_irreducible_mod_p(int p, const std::vector<int>& poly) {
  IP f = poly;
  for (auto& c : f) c = ((c % p) + p) % p;
  trim(f);
  int n = static_cast<int>(f.size()) - 1;
  if (n < 1) return false;
  if (n == 1) return true;
  // Rabin: x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for primes r | n.
  IP xn = frob_x(n, f, p);
  IP x = mod_poly(IP{0, 1}, f, p);
  if (xn != x) return false;
  for (int r : prime_factors(n)) {
    IP h = frob_x(n / r, f, p);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] - 1 + p) % p;
    trim(h);
    IP g = gcd_poly(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<int> Field::least_irreducible(int p, int k) {
  if (!is_prime(p)) throw FieldError("characteristic must be prime");
  if (k < 1) throw FieldError("extension degree must be positive");
  long long count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (long long idx = 0; idx < count; ++idx) {
    IP f(k + 1, 0);
    long long v = idx;
    for (int i = 0; i < k; ++i) {
      f[i] = static_cast<int>(v % p);
      v /= p;
    }
    f[k] = 1;
    if (is_irreducible_mod_p(p, f)) return f;
  }
  throw FieldError("no irreducible polynomial found");
}

const Field* Field::get(int p, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, const Field*> cache;
  if (!is_prime(p)) throw FieldError("characteristic must be prime: " + std::to_string(p));
  if (k < 1) throw FieldError("extension degree must be positive");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
  }
  std::vector<int> modulus;
  if (k == 1) modulus = {0, 1};
  for (auto& e : modulus_table())
    if (e.p == p && e.k == k) modulus = e.coeffs;
  if (modulus.empty()) modulus = least_irreducible(p, k);
  const Field* f = get(p, modulus);
  std::lock_guard<std::mutex> lock(mu);
  cache[{p, k}] = f;
  return f;
}

const Field* Field::get(int p, const std::vector<int>& modulus) {
  if (!is_prime(p)) throw FieldError("characteristic must be prime: " + std::to_string(p));
  IP m = modulus;
  for (auto& c : m) c = ((c % p) + p) % p;
  trim(m);
  if (m.size() < 2) throw FieldError("modulus must have positive degree");
  if (m.back() != 1) throw FieldError("modulus must be monic");
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(p, m);
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return it->second.get();
  if (!is_irreducible_mod_p(p, m)) throw FieldError("modulus is not irreducible over F_" + std::to_string(p));
  std::unique_ptr<Field> f(new Field(p, m));
  const Field* raw = f.get();
  reg.fields.emplace(key, std::move(f));
  return raw;
}

Field::Field(int p, std::vector<int> modulus) : p_(p), modulus_(std::move(modulus)) {
  k_ = static_cast<int>(modulus_.size()) - 1;
  unsigned long long q = 1;
  for (int i = 0; i < k_; ++i) {
    q *= static_cast<unsigned long long>(p_);
    if (q > kMaxOrder) throw FieldError("field order exceeds supported size");
  }
  q_ = static_cast<Fe>(q);

  neg_.resize(q_);
  for (Fe a = 0; a < q_; ++a) {
    auto d = digits(a);
    for (auto& c : d) c = (p_ - c) % p_;
    neg_[a] = from_digits(d);
  }
  if (q_ <= 2048) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Fe a = 0; a < q_; ++a) {
      auto da = digits(a);
      for (Fe b = 0; b < q_; ++b) {
        auto db = digits(b);
        std::vector<int> s(k_);
        for (int i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
        add_table_[static_cast<std::size_t>(a) * q_ + b] = from_digits(s);
      }
    }
  }

  // Find a multiplicative generator by slow polynomial arithmetic, then
  // tabulate exp/log.
  auto to_poly = [&](Fe a) {
    IP r = digits(a);
    trim(r);
    return r;
  };
  auto to_fe = [&](IP r) {
    r.resize(k_, 0);
    return from_digits(r);
  };
  std::vector<int> qf = prime_factors(static_cast<long long>(q_) - 1);
  auto pow_slow = [&](Fe a, long long e) {
    IP result{1};
    IP base = to_poly(a);
    while (e > 0) {
      if (e & 1) result = mulmod(result, base, modulus_, p_);
      base = mulmod(base, base, modulus_, p_);
      e >>= 1;
    }
    return to_fe(result);
  };
  if (q_ == 2) {
    primitive_ = 1;
  } else {
    primitive_ = 0;
    for (Fe c = 2; c < q_ && primitive_ == 0; ++c) {
      bool ok = true;
      for (int r : qf)
        if (pow_slow(c, (static_cast<long long>(q_) - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) primitive_ = c;
    }
    if (primitive_ == 0) throw FieldError("no multiplicative generator found");
  }
  exp_.assign(2 * static_cast<std::size_t>(q_), 0);
  log_.assign(q_, 0);
  IP cur{1};
  IP gp = to_poly(primitive_);
  for (Fe i = 0; i + 1 < q_; ++i) {
    Fe v = to_fe(cur);
    exp_[i] = v;
    exp_[i + q_ - 1] = v;
    log_[v] = i;
    cur = mulmod(cur, gp, modulus_, p_);
  }
}

std::vector<int> Field::digits(Fe a) const {
  std::vector<int> d(k_, 0);
  for (int i = 0; i < k_; ++i) {
    d[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return d;
}

Fe Field::from_digits(const std::vector<int>& d) const {
  Fe r = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) r = r * p_ + static_cast<Fe>(((d[i] % p_) + p_) % p_);
  return r;
}

Fe Field::gen() const {
  if (k_ == 1) {
    // The root of the linear modulus t + c is -c.
    return static_cast<Fe>((p_ - modulus_[0]) % p_);
  }
  return static_cast<Fe>(p_);
}

Fe Field::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return static_cast<Fe>(r);
}

Fe Field::add(Fe a, Fe b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  if (k_ == 1) return (a + b) % p_;
  Fe r = 0, mult = 1;
  for (int i = 0; i < k_; ++i) {
    Fe s = (a % p_ + b % p_) % p_;
    r += s * mult;
    mult *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

Fe Field::neg(Fe a) const { return neg_[a]; }

Fe Field::inv(Fe a) const {
  if (a == 0) throw FieldError("division by zero in F_q");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Fe Field::pow(Fe a, long long e) const {
  if (a == 0) {
    if (e < 0) throw FieldError("division by zero in F_q");
    return e == 0 ? 1 : 0;
  }
  long long m = static_cast<long long>(q_) - 1;
  long long l = (static_cast<long long>(log_[a]) * (((e % m) + m) % m)) % m;
  return exp_[l];
}

Fe Field::pth_root(Fe a) const {
  // a^(p^(k-1)) inverts the Frobenius on F_{p^k}.
  Fe r = a;
  for (int i = 0; i + 1 < k_; ++i) r = frob(r);
  return r;
}

std::uint64_t Field::order(Fe a) const {
  if (a == 0) throw FieldError("zero has no multiplicative order");
  std::uint64_t m = q_ - 1;
  std::uint64_t ord = m;
  for (int r : prime_factors(static_cast<long long>(m))) {
    while (ord % r == 0 && pow(a, static_cast<long long>(ord / r)) == 1) ord /= r;
  }
  return ord;
}

int Field::degree_over_prime(Fe a) const {
  Fe x = frob(a);
  int d = 1;
  while (x != a) {
    x = frob(x);
    ++d;
  }
  return d;
}

std::string Field::to_string(Fe a) const {
  if (k_ == 1) return std::to_string(a);
  auto d = digits(a);
  std::string out;
  for (int i = k_ - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    std::string term;
    if (i == 0) {
      term = std::to_string(d[i]);
    } else {
      if (d[i] != 1) term = std::to_string(d[i]) + "*";
      term += "g";
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out.empty() ? "0" : out;
}

bool Field::is_monomial_text(Fe a) const {
  if (k_ == 1) return true;
  auto d = digits(a);
  int nz = 0;
  for (int c : d) nz += c != 0;
  return nz <= 1;
}

std::string Field::modulus_string() const {
  std::string out;
  for (int i = k_; i >= 0; --i) {
    int c = modulus_[i];
    if (c == 0) continue;
    std::string term;
    if (i == 0) {
      term = std::to_string(c);
    } else {
      if (c != 1) term = std::to_string(c) + "*";
      term += "t";
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

namespace {

struct FeBuilder {
  const Field* f;
  Fe number(long long n) { return f->from_int(n); }
  Fe variable(char c, std::size_t pos) {
    if (c != 'g') throw ParseError(std::string("unknown symbol '") + c + "' in field element", pos);
    return f->gen();
  }
  Fe add(Fe a, Fe b) { return f->add(a, b); }
  Fe sub(Fe a, Fe b) { return f->sub(a, b); }
  Fe mul(Fe a, Fe b) { return f->mul(a, b); }
  Fe div(Fe a, Fe b, std::size_t pos) {
    if (b == 0) throw ParseError("division by zero", pos);
    return f->div(a, b);
  }
  Fe neg(Fe a) { return f->neg(a); }
  Fe power(Fe a, long long e, std::size_t pos) {
    if (a == 0 && e < 0) throw ParseError("division by zero", pos);
    return f->pow(a, e);
  }
};

}  // namespace

Fe Field::parse(const std::string& text) const {
  FeBuilder b{this};
  ExprParser<FeBuilder> parser(text, b);
  return parser.parse();
}

}  // namespace h10ff
