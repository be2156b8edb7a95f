#pragma once

#include <vector>

#include "h10ff/ratfunc.hpp"

namespace h10ff {

/// Truncated Laurent series at t = 0: sum of c[i] t^(lo + i), known modulo
/// t^prec. Every coefficient below lo is zero.
class Laurent {
 public:
  Laurent() = default;
  /// Zero modulo t^prec with coefficients stored from t^lo.
  Laurent(const Field* f, int lo, int prec);

  /// Expansion of x modulo t^prec.
  static Laurent expand(const RatFunc& x, int prec);
  static Laurent constant(const Field* f, Fe c, int prec);

  const Field* field() const { return f_; }
  int lo() const { return lo_; }
  int prec() const { return prec_; }
  Fe coeff(int e) const;
  void set_coeff(int e, Fe c);
  /// Smallest exponent with a nonzero coefficient, or prec when none is known.
  int valuation() const;

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent scale(Fe c) const;
  Laurent pow(int e) const;
  /// Forget everything from t^prec on.
  Laurent truncate(int prec) const;
  /// Coefficients of t^lo .. t^(hi - 1); hi must not exceed prec.
  std::vector<Fe> window(int lo, int hi) const;

 private:
  const Field* f_ = nullptr;
  int lo_ = 0;
  int prec_ = 0;
  std::vector<Fe> c_;
};

/// The root y = 1 + O(t) of y^q = b for a one-unit b; q must be invertible.
Laurent one_unit_root(const Laurent& b, int q);
/// The root y = O(t) of y^p - y = b for b = O(t).
Laurent artin_schreier_root(const Laurent& b);

}  // namespace h10ff
