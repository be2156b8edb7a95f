#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "h10ff/multipoly.hpp"

namespace h10ff {

using Json = nlohmann::ordered_json;

/// A polynomial condition kept in unexpanded form.
///
/// Leaf: a single polynomial together with the multipliers that were used to
/// clear its denominators; a leaf only counts as satisfied when every such
/// multiplier is nonzero.
/// Product: the product of its children, so it vanishes when any child does
/// (finite disjunction).
/// Combine: the left fold f, g -> f^2 - t g^2 of its children, which
/// vanishes exactly when all children do (conjunction), since t is not a
/// square in F_q(t).
class Equation {
 public:
  enum class Kind { Leaf, Product, Combine };

  Equation() = default;
  static Equation leaf(MultiPoly poly, std::vector<MultiPoly> cleared = {}, std::string label = {});
  static Equation product(std::vector<Equation> children, std::string label = {});
  static Equation combine(std::vector<Equation> children, std::string label = {});

  Kind kind() const { return kind_; }
  const MultiPoly& poly() const { return poly_; }
  const std::vector<MultiPoly>& cleared() const { return cleared_; }
  const std::vector<Equation>& children() const { return children_; }
  const std::string& label() const { return label_; }

  /// Value of the polynomial this node encodes.
  RatFunc evaluate(const Assignment& a) const;
  /// The node as one expanded polynomial.
  MultiPoly expand() const;
  std::set<std::string> variables() const;
  Equation rename(const std::function<std::string(const std::string&)>& fn) const;
  Equation partial_eval(const Assignment& a) const;
  /// Number of leaves below this node.
  std::size_t leaf_count() const;

  bool operator==(const Equation& o) const;

 private:
  Kind kind_ = Kind::Leaf;
  MultiPoly poly_;
  std::vector<MultiPoly> cleared_;
  std::vector<Equation> children_;
  std::string label_;
};

/// Fold f, g -> f^2 - t g^2 over a list of polynomials.
MultiPoly combine_polys(const std::vector<MultiPoly>& polys);

struct EquationSystem {
  const Field* field = nullptr;
  std::vector<std::string> unknowns;
  std::vector<Equation> equations;
  Json meta = Json::object();

  bool has_unknown(const std::string& name) const;
  void add_unknown(const std::string& name);
};

Json field_to_json(const Field* f);
const Field* field_from_json(const Json& j);

Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Field* f, const Json& j, const std::vector<std::string>* declared);
Json equation_to_json(const Equation& e);
Equation equation_from_json(const Field* f, const Json& j, const std::vector<std::string>* declared);

Json system_to_json(const EquationSystem& s);
/// Parses and validates a system; rejects undeclared unknowns and malformed
/// coefficients.
EquationSystem system_from_json(const Json& j);

Json assignment_to_json(const Assignment& a);
Assignment assignment_from_json(const Field* f, const Json& j);

Json divisor_to_json(const Divisor& d);
Divisor divisor_from_json(const Field* f, const Json& j);

}  // namespace h10ff
