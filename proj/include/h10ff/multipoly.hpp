#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "h10ff/ratfunc.hpp"

namespace h10ff {

/// Named unknown -> positive exponent.
using Monomial = std::map<std::string, int>;
/// Values for named unknowns.
using Assignment = std::map<std::string, RatFunc>;

/// Polynomial in named unknowns with coefficients in F_q(t). Terms are kept
/// in lexicographic monomial order with zero coefficients removed.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(const Field* f) : f_(f) {}
  MultiPoly(const RatFunc& c);  // NOLINT(google-explicit-constructor)

  static MultiPoly var(const Field* f, const std::string& name);
  static MultiPoly constant(const Field* f, long long n) { return MultiPoly(RatFunc::from_int(f, n)); }
  static MultiPoly t(const Field* f) { return MultiPoly(RatFunc::t(f)); }

  const Field* field() const { return f_; }
  const std::map<Monomial, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree (0 for constants and for the zero polynomial).
  int degree() const;

  void add_term(const Monomial& m, const RatFunc& c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly pow(unsigned e) const;

  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  std::set<std::string> variables() const;
  /// Full evaluation; every variable must be assigned.
  RatFunc evaluate(const Assignment& a) const;
  /// Substitute the assigned variables and keep the rest symbolic.
  MultiPoly partial_eval(const Assignment& a) const;
  /// Replace a variable by a polynomial.
  MultiPoly substitute(const std::string& name, const MultiPoly& value) const;
  MultiPoly rename(const std::function<std::string(const std::string&)>& fn) const;

  std::string to_string() const;

 private:
  const Field* f_ = nullptr;
  std::map<Monomial, RatFunc> terms_;
};

inline MultiPoly operator*(const RatFunc& c, const MultiPoly& p) { return MultiPoly(c) * p; }

}  // namespace h10ff
