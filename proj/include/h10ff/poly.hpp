#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "h10ff/field.hpp"

namespace h10ff {

/// Dense univariate polynomial over F_q, coefficients stored low degree
/// first with no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field* f) : f_(f) {}
  Poly(const Field* f, std::vector<Fe> coeffs);

  static Poly constant(const Field* f, Fe c);
  static Poly monomial(const Field* f, Fe c, int degree);
  /// The polynomial t.
  static Poly var(const Field* f) { return monomial(f, 1, 1); }

  const Field* field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  Fe lc() const { return c_.empty() ? 0 : c_.back(); }
  Fe coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  const std::vector<Fe>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  static void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);
  Poly operator/(const Poly& o) const;
  Poly operator%(const Poly& o) const;

  Poly scale(Fe c) const;
  Poly monic() const;
  Poly derivative() const;
  Fe eval(Fe x) const;
  Poly pow(std::uint64_t e) const;
  /// f(t)^p computed through the Frobenius.
  Poly frobenius() const;
  /// f(t)^(p^s).
  Poly frobenius_pow(int s) const;
  /// f(g(t)).
  Poly compose(const Poly& g) const;
  Poly powmod(std::uint64_t e, const Poly& m) const;
  /// Apply x -> x^(p^j) to every coefficient (Galois action on constants).
  Poly map_coeffs_frob(int j) const;

  bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  /// Canonical order: degree first, then coefficients from the top down.
  bool operator<(const Poly& o) const;

  std::string to_string(char var = 't') const;

 private:
  void trim();
  const Field* f_ = nullptr;
  std::vector<Fe> c_;
};

/// Monic gcd (zero when both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
/// Extended gcd: returns g = s*a + u*b with g monic.
Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& u);

struct Factor {
  Poly poly;
  int mult;
};

/// Factorisation into monic irreducibles with multiplicities, sorted in
/// canonical order. The leading coefficient is dropped.
std::vector<Factor> factor(const Poly& f);
bool is_irreducible(const Poly& f);
/// Square-free decomposition: pairs (g_i, i) with f = lc * prod g_i^i.
std::vector<Factor> squarefree_decomposition(const Poly& f);
/// Monic polynomials of exact degree d in canonical order.
std::vector<Poly> monic_polys(const Field* f, int d);

}  // namespace h10ff
