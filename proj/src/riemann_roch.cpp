#include "h10ff/riemann_roch.hpp"

#include <algorithm>
#include <set>

#include "h10ff/linalg.hpp"

namespace h10ff {

std::vector<RatFunc> riemann_roch_basis(const Field* f, const Divisor& D) {
  Poly B = Poly::constant(f, 1);
  Poly A = Poly::constant(f, 1);
  int n_inf = 0;
  for (auto& [P, m] : D) {
    if (P.is_infinite()) {
      n_inf = m;
    } else if (m > 0) {
      B = B * P.poly().pow(m);
    } else if (m < 0) {
      A = A * P.poly().pow(-m);
    }
  }
  // f = N / B with N a polynomial of degree <= deg B + n_inf divisible by A.
  int n = B.degree() + n_inf;
  if (n < 0) return {};
  int cols = n + 1;
  int da = A.degree();
  FqMatrix m(da, std::vector<Fe>(cols, 0));
  for (int j = 0; j < cols; ++j) {
    Poly r = Poly::monomial(f, 1, j) % A;
    for (int i = 0; i < da; ++i) m[i][j] = r.coeff(i);
  }
  FqMatrix null = nullspace(f, m, cols);
  if (null.empty()) return {};
  // Reduce with columns in descending degree so each vector is monic with a
  // distinct top degree.
  FqMatrix rev(null.size(), std::vector<Fe>(cols));
  for (std::size_t r = 0; r < null.size(); ++r)
    for (int j = 0; j < cols; ++j) rev[r][j] = null[r][n - j];
  rref(f, rev, cols);
  std::vector<RatFunc> basis;
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
    std::vector<Fe> c(cols);
    for (int j = 0; j < cols; ++j) c[j] = (*it)[n - j];
    basis.emplace_back(Poly(f, c), B);
  }
  return basis;
}

bool in_riemann_roch_space(const RatFunc& y, const Divisor& D) {
  if (y.is_zero()) return true;
  Divisor dy = divisor_of(y);
  std::set<Place> places;
  for (auto& [P, m] : dy) places.insert(P);
  for (auto& [P, m] : D) places.insert(P);
  for (auto& P : places) {
    auto it_y = dy.find(P);
    auto it_d = D.find(P);
    int oy = it_y == dy.end() ? 0 : it_y->second;
    int dd = it_d == D.end() ? 0 : it_d->second;
    if (oy < -dd) return false;
  }
  return true;
}

RatFunc construct_separating_element(const Field* f, const Divisor& A, const Divisor& B, const Place& T) {
  if (!is_effective(A) || !is_effective(B)) throw FieldError("A and B must be effective divisors");
  for (auto& [P, m] : A)
    if (B.count(P)) throw FieldError("A and B must have disjoint supports");
  if (A.count(T) || B.count(T)) throw FieldError("T must lie outside the supports of A and B");

  int m = divisor_degree(A) + 1;
  Divisor U;
  U[T] = m;
  for (auto& [P, e] : A) U[P] = -e;
  std::vector<RatFunc> basis = riemann_roch_basis(f, U);

  std::vector<Place> avoid;
  for (auto& [P, e] : A) avoid.push_back(P);
  for (auto& [P, e] : B) avoid.push_back(P);
  if (!T.is_infinite()) avoid.push_back(Place::infinity());

  auto admissible = [&](const RatFunc& y) {
    if (y.is_zero()) return false;
    if (ord_at(y, T) != -m) return false;
    for (auto& P : avoid) {
      auto it = A.find(P);
      int need = it == A.end() ? 0 : it->second;
      if (ord_at(y, P) != need) return false;
    }
    return true;
  };

  std::size_t n = basis.size();
  std::vector<Fe> c(n, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < n) {
      if (++c[i] < f->q()) break;
      c[i] = 0;
      ++i;
    }
    if (i == n) break;
    RatFunc y(f);
    for (std::size_t j = 0; j < n; ++j)
      if (c[j] != 0) y = y + basis[j].scale(c[j]);
    if (admissible(y)) return y;
  }
  throw FieldError("constant field too small to separate the given divisors; enlarge k");
}

}  // namespace h10ff
