#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "h10ff/system.hpp"

namespace h10ff {

using Rational = boost::rational<long long>;

std::string rational_to_string(const Rational& r);

/// Constants of the pk-power construction for the rational function field
/// (genus 0, degree 1, no Weak Vertical Method contribution).
struct ConstantsRecord {
  int p = 0;
  int g = 0;
  int a = 0;
  long long C = 0;
  int k = 1;
  long long h_omega = 0;
  long long e = 0;
  Rational C1, C2, C3, C4, C5;
};

ConstantsRecord compute_constants(int p, long long C);
Json constants_to_json(const ConstantsRecord& c);

/// Constants c_0..c_B of pairwise coprime multiplicative orders together
/// with their Frobenius orbits V_i = {c_i^(p^j)}.
struct ConstantSet {
  const Field* field = nullptr;
  std::vector<Fe> elements;
  std::vector<std::vector<Fe>> orbits;
  long long exp_bound = 0;

  std::size_t size() const { return elements.size(); }
  /// |V_i|.
  int r(std::size_t i) const { return static_cast<int>(orbits[i].size()); }
  /// d(i, j) = c_i^(p^j).
  Fe d(std::size_t i, long long j) const { return orbits[i][static_cast<std::size_t>(j % r(i))]; }
};

/// Set built from explicit elements (orbits computed).
ConstantSet make_constant_set(const Field* f, const std::vector<Fe>& elements, long long exp_bound);

/// Picks `count` elements whose orders are pairwise coprime and exceed
/// exp_bound. Throws "enlarge k" naming the smallest workable degree.
ConstantSet build_constant_set(const Field* f, int count, long long exp_bound);

/// True when c_i^n != c_j^m for all i != j and 0 < |n|, |m| <= exp_bound.
bool constant_set_independent(const ConstantSet& cs);

/// The subset C_z: c is kept iff z - c^(p^j) has no zero at any excluded
/// place for every j.
ConstantSet admissible_constants(const RatFunc& z, const ConstantSet& cs, const std::vector<Place>& excluded);

Json constant_set_to_json(const ConstantSet& cs);

/// Base pair in w, u, v: (1/w - 1/t = u^(p^a) - u) and (w - t = v^(p^a) - v).
EquationSystem gen_base_pair_system(const Field* f);

/// Base pair plus, for every ordered pair i != j, the disjunction over
/// (b, b') in V_i x V_j of the two orbit equations. Requires |cs| >= C5
/// unless desk_clamp is set.
EquationSystem gen_pk_power_of_t_system(int p, const ConstantSet& cs, const ConstantsRecord& consts,
                                        bool desk_clamp = false);

/// Unknown names used by gen_pk_power_of_t_system.
std::string pk_pair_unknown(char which, std::size_t i, std::size_t j, int jb, int jbp);

/// (w - c')/(w - c) - (t - b')/(t - b) = u_b^(p^a) - u_b, cleared by (w - c)(t - b).
MultiPoly gen_getdown_equation(const Field* f, Fe b, Fe bp, Fe c, Fe cp, int p, int a);

/// The D system for v = u^(p^(as)) with the index choices expanded over
/// the orbits of cs.
EquationSystem gen_d_system(int p, int a, int s, const ConstantSet& cs);

/// Unknown names used by gen_d_system.
std::string d_uu(std::size_t i, std::size_t l);
std::string d_vv(std::size_t i, int ji, std::size_t l, int jl);
std::string d_mu(std::size_t i, int ji, std::size_t l, int jl, int z, int m);
std::string d_sigma(std::size_t i, int ji, std::size_t l, int jl);

/// E(u, ut, v, vt, x, y, j, r, s) for p > 2.
EquationSystem gen_e_system(const Field* f, int s, int j, int r);
EquationSystem gen_e_system(const Field* f, int s);
/// E2 for characteristic 2.
EquationSystem gen_e2_system(const Field* f, int s, int j, int r);
EquationSystem gen_e2_system(const Field* f, int s);

/// System defining y = x^(p^s): E(x, y) and E(x + 1, y + 1) for p > 2,
/// E2 for p = 2. The second E instance uses the unknowns u1, ut1, v1, vt1.
EquationSystem gen_full_pk_pair_system(const Field* f, int s);

/// Left fold f, g -> f^2 - t g^2 over the expanded equations.
MultiPoly combine_to_single(const EquationSystem& sys);

/// Copy of sys with every unknown renamed prefix + name.
EquationSystem prefixed(const EquationSystem& sys, const std::string& prefix);

}  // namespace h10ff
