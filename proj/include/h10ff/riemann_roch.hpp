#pragma once

#include <vector>

#include "h10ff/ratfunc.hpp"

namespace h10ff {

/// Basis of L(D) = {f : ord_P f >= -D(P) for all P} for the rational function
/// field F_q(t). Positive multiplicities allow poles, negative ones demand
/// zeros. The basis is the reduced echelon basis of the numerators over the
/// common denominator, ordered by increasing numerator degree.
std::vector<RatFunc> riemann_roch_basis(const Field* f, const Divisor& D);

/// True when y lies in L(D).
bool in_riemann_roch_space(const RatFunc& y, const Divisor& D);

/// Finds y with pole divisor exactly T^(deg A + 1) whose zero divisor is
/// A + C, with C prime to A, B, T (and to infinity when T is finite). A and B
/// must be effective and T a single place outside their supports.
/// Candidates are the nonzero F_q-combinations of the L(D) basis in counter
/// order (first coefficient varying fastest). Throws when the constant field
/// is too small.
RatFunc construct_separating_element(const Field* f, const Divisor& A, const Divisor& B, const Place& T);

}  // namespace h10ff
