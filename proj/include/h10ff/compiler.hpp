#pragma once

#include <string>
#include <variant>
#include <vector>

#include "h10ff/expr_parser.hpp"
#include "h10ff/integrality.hpp"
#include "h10ff/system.hpp"

namespace h10ff {

/// x + y = z over the positive integers.
struct SumEq {
  std::string x, y, z;
  bool operator==(const SumEq&) const = default;
};
/// x |p y: y = x p^s for some s >= 0.
struct PDiv {
  std::string x, y;
  bool operator==(const PDiv&) const = default;
};
/// x = n with n >= 1.
struct ConstEq {
  std::string x;
  long long n = 1;
  bool operator==(const ConstEq&) const = default;
};
using Atom = std::variant<SumEq, PDiv, ConstEq>;

std::string atom_to_string(const Atom& a);

/// Existential formula over (Z+, +, |p): a conjunction of atoms.
struct PheidasAST {
  /// In order of first occurrence.
  std::vector<std::string> variables;
  std::vector<Atom> atoms;
  std::string to_string() const;
  Json to_json() const;
};

/// formula := atom ("&" atom)*
/// atom    := var "+" var "=" var | var "|p" var | var "=" nat
/// Whitespace is ignored; the empty formula has no atoms. Throws ParseError
/// with the offending position.
PheidasAST parse_formula(const std::string& text);

/// Positive integer tuples, one entry per variable in AST order.
using ZTuple = std::vector<long long>;

/// Every tuple in {1..bound}^vars satisfying all atoms, in lexicographic
/// order.
std::vector<ZTuple> oracle_solve_z(const PheidasAST& ast, int p, int bound);

struct CompileOptions {
  /// Largest s in the disjunction over y = x^(p^s) for each |p atom.
  int s_max = 2;
};

/// Field unknown standing for the Z+ variable v (intended value t^v).
std::string z_unknown(const std::string& v);

/// Compiles the formula to a system over F = f:
///   x + y = z    ->  z_z - z_x z_y
///   x = n        ->  z_x - t^n
///   x |p y       ->  (z_x, w) in P(K) for some s <= s_max, w/z_y and z_y/w
///                    in INT; unknowns prefixed atomK__
///   positivity   ->  z_v / t in INT for every variable; prefix pos_v__
/// meta maps every atom and positivity condition to its equation indices.
EquationSystem compile(const PheidasAST& ast, const Field* f, const CompileOptions& opts = {});

struct ModelCheckReport {
  int p = 0;
  int boundZ = 0;
  int boundH = 0;
  std::vector<std::string> variables;
  /// In the oracle set and accepted by the compiled system.
  std::vector<ZTuple> matched;
  /// Tuples on which the two sides disagree or the compiled side stayed
  /// undecided, with a reason each.
  std::vector<std::pair<ZTuple, std::string>> mismatched;
  /// Rejected by the compiled system only through bounded refutation of an
  /// INT block, with the blocks responsible.
  std::vector<std::pair<ZTuple, std::vector<std::string>>> bounded_only;
  std::size_t oracle_count = 0;
  std::size_t compiled_count = 0;
  bool ok() const { return mismatched.empty(); }
  Json to_json() const;
};

/// Compares oracle_solve_z(ast, p, boundZ) with the compiled system over
/// F_p restricted to z_v in {t, ..., t^boundZ}. Equations between the z
/// unknowns go through solve_bounded; INT and P(K) blocks are accepted by a
/// constructed witness and rejected by the t-adic screen at height boundH.
/// Every accepted tuple is verified against the whole compiled system.
ModelCheckReport restricted_model_check(const PheidasAST& ast, int p, int boundZ, int boundH);

}  // namespace h10ff
