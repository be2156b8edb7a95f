#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "h10ff/system.hpp"

namespace h10ff {

/// Tower K(delta)(beta_w)(alpha) over K = F_{p^k}(t) for an auxiliary prime q.
///
/// q != p: delta^q = t + 1, alpha^q = a, beta_w^q = 1/h_w + 1.
/// q == p: delta^p - delta + t = 0, alpha^p - alpha = a,
///         beta_w^p - beta_w = 1/h_w.
struct TowerSpec {
  const Field* field = nullptr;
  int q = 0;
  int p = 0;
  Fe a = 0;

  bool artin_schreier() const { return q == p; }
  /// Monic minimal polynomials, coefficients low degree first.
  std::vector<RatFunc> alpha_min() const;
  std::vector<RatFunc> delta_min() const;
  std::vector<RatFunc> beta_min(const RatFunc& w) const;
  Json to_json() const;
};

/// Builds the tower for q. With no explicit a, the least element (by index)
/// making alphaMin irreducible is taken. Throws when q is not prime, when
/// q != p and F lacks a primitive q-th root of unity, or when no a exists.
TowerSpec make_tower(const Field* f, int q, std::optional<Fe> a = std::nullopt);
TowerSpec tower_from_json(const Json& j);
/// Smallest prime q <= 3 with q != p dividing p^k - 1, else q = p.
int default_aux_prime(const Field* f);

/// h_w = t^-1 w^q + t^-q.
RatFunc compute_h(const RatFunc& w, int q);
/// ord_(t) h_w is not divisible by q. Cross-checked against ord_(t) w < 0.
bool pole_obstruction_at_zero_of_t(const RatFunc& w, int q);
/// Residues mod q of the orders of h_w at the finite places of its support,
/// measured in the tower K(delta)(beta_w): the order is multiplied by the
/// ramification index of each step before reducing.
std::map<Place, int> divisor_mod_q_profile(const RatFunc& w, int q);

struct NormFormSpec {
  int q = 0;
  std::string conjugate_rule;
  std::vector<RatFunc> minpoly;
  /// a0, ..., a_{q-1}.
  std::vector<std::string> vars;
  /// Resultant of minpoly(T) and a0 + a1 T + ... + a_{q-1} T^(q-1).
  MultiPoly P;
  Json to_json() const;
};

/// Norm form of alphaMin.
NormFormSpec gen_norm_form(const TowerSpec& ts);
/// Norm form of a monic polynomial with coefficients in F(t). Throws when
/// the polynomial is reducible or its irreducibility cannot be certified.
NormFormSpec gen_norm_form(const Field* f, const std::vector<RatFunc>& minpoly);
/// Resultant norm form without any irreducibility check.
NormFormSpec norm_form_of(const Field* f, const std::vector<RatFunc>& minpoly);
/// Monic polynomial prod (T - alpha_j).
std::vector<RatFunc> poly_from_roots(const std::vector<RatFunc>& alphas);

/// Solves sum_i a_i alpha_j^i = y_j with y_0 = y and y_j = 1 otherwise, so
/// that P(a) = y for the norm form of prod (T - alpha_j). Throws on repeated
/// roots.
std::vector<RatFunc> solve_norm_form_split(const RatFunc& y, const std::vector<RatFunc>& alphas);

/// Name of the coordinate of a_i at the basis element delta^r beta^s.
std::string int_coordinate(int i, int r, int s);

/// The norm equation P(a) = h_w pushed down to coordinates over F(t).
/// Unknowns: w and int_coordinate(i, r, s) for i, r, s < q. One equation per
/// basis element, every one cleared by D = t^(q-1) w^q + 1.
EquationSystem gen_int_definition(const TowerSpec& ts);

struct NormSearchResult {
  std::optional<Assignment> witness;
  /// The t-adic screen showed no coordinates of height <= bound can work.
  bool refuted_by_screen = false;
  long long examined = 0;
  /// Every tuple up to the bound was examined or the screen refuted all.
  bool complete = false;
  int bound = 0;
  Json to_json() const;
};

/// Bounded search for coordinates of height <= bound satisfying the pushed
/// down norm equation for this w. A sound t-adic screen runs first; the
/// enumeration walks total-height shells and stops after `limit` tuples.
NormSearchResult check_norm_solvable_bruteforce(const RatFunc& w, const TowerSpec& ts, int bound,
                                                long long limit = 200000);

/// The t-adic screen alone: true when no coordinate tuple of height <=
/// bound can satisfy the norm equation modulo a high enough power of t.
/// Returns false when inconclusive.
bool norm_screen_refutes(const RatFunc& w, const TowerSpec& ts, int bound);

/// Explicit witness over a prime field: writes h_w, or h_w times a known
/// norm, as a norm from F_{p^q}(delta) by factoring in delta. Returns
/// nothing when that route does not apply. The result is verified.
std::optional<Assignment> construct_int_witness(const RatFunc& w, const TowerSpec& ts);

}  // namespace h10ff
