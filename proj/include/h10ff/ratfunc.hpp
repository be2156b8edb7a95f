#pragma once

#include <map>
#include <string>
#include <vector>

#include "h10ff/poly.hpp"

namespace h10ff {

/// Element of F_q(t) kept in canonical form: gcd(num, den) = 1, den monic,
/// zero stored as 0/1.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const Field* f) : num_(f), den_(Poly::constant(f, 1)) {}
  RatFunc(const Poly& num, const Poly& den);
  explicit RatFunc(const Poly& num) : RatFunc(num, Poly::constant(num.field(), 1)) {}

  static RatFunc constant(const Field* f, Fe c) { return RatFunc(Poly::constant(f, c)); }
  static RatFunc from_int(const Field* f, long long n) { return constant(f, f->from_int(n)); }
  static RatFunc t(const Field* f) { return RatFunc(Poly::var(f)); }
  /// t^n for any integer n.
  static RatFunc t_pow(const Field* f, long long n);
  /// Parses expressions over t and g, e.g. "(g*t^2 + 2)/(t^3 + g^2)".
  static RatFunc parse(const Field* f, const std::string& text);

  const Field* field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }
  /// Value of a constant function.
  Fe constant_value() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc inv() const;
  RatFunc pow(long long e) const;
  RatFunc scale(Fe c) const;
  /// x^(p^s) computed coefficient-wise.
  RatFunc frobenius_pow(int s) const;
  /// d/dt by the quotient rule.
  RatFunc derivative() const;
  /// Substitute t -> g (g a rational function).
  RatFunc compose(const RatFunc& g) const;
  /// Apply the field automorphism x -> x^(p^j) to all coefficients.
  RatFunc map_coeffs_frob(int j) const;

  /// max(deg num, deg den); zero has height 0.
  int height() const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  /// Structural order: (num, den) in canonical polynomial order.
  bool operator<(const RatFunc& o) const;

  /// Canonical text "(num)/(den)".
  std::string to_string() const;

 private:
  Poly num_;
  Poly den_;
};

/// A place of F_q(t): a monic irreducible polynomial or the place at
/// infinity.
class Place {
 public:
  Place() : infinite_(true) {}
  static Place infinity() { return Place(); }
  static Place finite(const Poly& p);
  /// Skips the irreducibility check; for factors produced by factor().
  static Place from_irreducible(const Poly& p);
  /// "inf" or a monic irreducible polynomial in t.
  static Place parse(const Field* f, const std::string& text);

  bool is_infinite() const { return infinite_; }
  const Poly& poly() const { return poly_; }
  int degree() const { return infinite_ ? 1 : poly_.degree(); }
  std::string to_string() const { return infinite_ ? "inf" : poly_.to_string(); }

  bool operator==(const Place& o) const {
    return infinite_ == o.infinite_ && (infinite_ || poly_ == o.poly_);
  }
  bool operator!=(const Place& o) const { return !(*this == o); }
  /// Finite places in canonical polynomial order, infinity last.
  bool operator<(const Place& o) const;

 private:
  bool infinite_;
  Poly poly_;
};

/// Formal sum of places with integer multiplicities (zero entries removed).
using Divisor = std::map<Place, int>;

int ord_at(const RatFunc& x, const Place& P);
int ord_at(const Poly& x, const Place& P);
Divisor divisor_of(const RatFunc& x);
/// Zero part and pole part of div(x), both effective.
Divisor zero_divisor(const RatFunc& x);
Divisor pole_divisor(const RatFunc& x);
int divisor_degree(const Divisor& D);
Divisor divisor_add(const Divisor& a, const Divisor& b, int sign_b = 1);
bool is_effective(const Divisor& D);
/// Order of dt/dpi at P for a local uniformizer pi: 0 at finite places and
/// -2 at infinity.
int local_derivation_order(const Place& P);
/// Every place not in `excluded` where x has a zero or pole has |ord| = 1.
bool is_squarefree_away_from(const RatFunc& x, const std::vector<Place>& excluded);
/// Every multiplicity of D is divisible by e.
bool is_pth_power_divisor(const Divisor& D, int e);

}  // namespace h10ff
