#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace h10ff {

/// Index of an element of F_{p^k}: sum of c_i p^i where c_i is the
/// coefficient of g^i in the power basis of the modulus root g.
using Fe = std::uint32_t;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite field F_{p^k} with table-driven arithmetic. Instances are interned
/// and live for the whole process, so plain pointers can be compared for
/// field identity.
class Field {
 public:
  static constexpr Fe kMaxOrder = 65536;

  /// Field with the lexicographically least monic irreducible modulus.
  static const Field* get(int p, int k = 1);
  /// Field with an explicit monic modulus over F_p (coefficients low to high).
  static const Field* get(int p, const std::vector<int>& modulus);

  /// Least monic irreducible of degree k over F_p, ordered by the integer
  /// sum c_i p^i of its non-leading coefficients.
  static std::vector<int> least_irreducible(int p, int k);
  static bool is_irreducible_mod_p(int p, const std::vector<int>& poly);

  int p() const { return p_; }
  int k() const { return k_; }
  Fe q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Fe zero() const { return 0; }
  Fe one() const { return 1; }
  Fe gen() const;
  Fe from_int(long long n) const;

  Fe add(Fe a, Fe b) const;
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe neg(Fe a) const;
  Fe mul(Fe a, Fe b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, long long e) const;
  /// a^p.
  Fe frob(Fe a) const { return pow(a, p_); }
  /// a^(1/p), the inverse of the Frobenius.
  Fe pth_root(Fe a) const;

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(Fe a) const;
  /// Fixed multiplicative generator used for the log tables.
  Fe primitive() const { return primitive_; }
  /// Smallest d with a^(p^d) = a; the size of the Frobenius orbit of a.
  int degree_over_prime(Fe a) const;
  bool in_prime_field(Fe a) const { return a < static_cast<Fe>(p_); }

  std::vector<int> digits(Fe a) const;
  Fe from_digits(const std::vector<int>& d) const;

  std::string to_string(Fe a) const;
  /// True when to_string(a) is a single product term (no " + ").
  bool is_monomial_text(Fe a) const;
  Fe parse(const std::string& text) const;
  /// Modulus printed as a polynomial in t over F_p.
  std::string modulus_string() const;

 private:
  Field(int p, std::vector<int> modulus);

  int p_;
  int k_;
  Fe q_;
  std::vector<int> modulus_;
  std::vector<Fe> add_table_;  // empty when q is large
  std::vector<Fe> neg_;
  std::vector<Fe> exp_;
  std::vector<std::uint32_t> log_;
  Fe primitive_ = 1;
};

bool is_prime(long long n);

}  // namespace h10ff
