#pragma once

#include <string>

#include "h10ff/system.hpp"
#include "h10ff/templates.hpp"

namespace h10ff {

/// v = x^(pa^(s-1)) + ... + x^pa + x, so that v^pa - v = x^(pa^s) - x.
RatFunc artin_schreier_witness(const RatFunc& x, long long pa, int s);

enum class Verdict { Satisfied, Violated, SpuriousDenominator };

struct VerifyResult {
  Verdict verdict = Verdict::Satisfied;
  /// Index of the first failing top-level equation (-1 when satisfied).
  int equation = -1;
  /// The cleared denominator that vanished, for SpuriousDenominator.
  std::string denominator;

  bool ok() const { return verdict == Verdict::Satisfied; }
  Json to_json() const;
};

/// Status of a single equation node: a leaf holds when its polynomial
/// vanishes and no cleared denominator does; a product holds when some child
/// holds; a combined node holds when all children hold.
enum class EqStatus { Holds, Violated, Spurious };
EqStatus equation_status(const Equation& e, const Assignment& a, std::string* denominator = nullptr);

/// Exact substitution into every equation; the lowest failing index wins.
/// Throws when an unknown of the system is unassigned or the assignment
/// names an undeclared unknown.
VerifyResult verify_assignment(const EquationSystem& sys, const Assignment& a);

/// Witness for the base pair at w = t^(p^(as)).
Assignment build_base_pair_witness(const Field* f, int s);

/// Witness for gen_pk_power_of_t_system at w = t^(p^(as)).
Assignment build_pk_power_witness(int p, int s, const ConstantSet& cs, const EquationSystem& sys);

/// Witness for gen_d_system with v = u^(p^(as)).
Assignment build_d_system_witness(const RatFunc& u, int p, int a, int s, const ConstantSet& cs,
                                  const EquationSystem& sys);

/// Witness for gen_e_system (p > 2) with y = x^(p^s) and j = r = s.
Assignment build_e_witness(const RatFunc& x, int s);
/// Witness for gen_e2_system with y = x^(2^s) and j = r = s.
Assignment build_e2_witness(const RatFunc& x, int s);
/// Witness for gen_full_pk_pair_system with y = x^(p^s).
Assignment build_full_pk_pair_witness(const RatFunc& x, int s);

/// Degree over F_p of the field generated by the constant set.
int constant_subfield_degree(const ConstantSet& cs);
/// Every coefficient of every value lies in F_(p^d).
bool coefficients_in_subfield(const Assignment& a, int d);

}  // namespace h10ff
