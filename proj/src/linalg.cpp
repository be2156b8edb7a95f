#include "h10ff/linalg.hpp"

#include <utility>

namespace h10ff {

std::vector<int> rref(const Field* f, FqMatrix& m, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Fe inv = f->inv(m[row][c]);
    for (auto& x : m[row]) x = f->mul(x, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Fe factor = m[r][c];
      for (int j = 0; j < cols; ++j) m[r][j] = f->sub(m[r][j], f->mul(factor, m[row][j]));
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

FqMatrix nullspace(const Field* f, FqMatrix m, int cols) {
  std::vector<int> piv = rref(f, m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : piv) is_pivot[c] = true;
  FqMatrix out;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Fe> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f->neg(m[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

int rank(const Field* f, FqMatrix m, int cols) { return static_cast<int>(rref(f, m, cols).size()); }

std::vector<RatFunc> solve_linear(std::vector<std::vector<RatFunc>> a, std::vector<RatFunc> b) {
  std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && a[sel][c].is_zero()) ++sel;
    if (sel == n) throw FieldError("singular linear system");
    std::swap(a[c], a[sel]);
    std::swap(b[c], b[sel]);
    RatFunc inv = a[c][c].inv();
    for (auto& x : a[c]) x = x * inv;
    b[c] = b[c] * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      RatFunc factor = a[r][c];
      for (std::size_t j = 0; j < n; ++j) a[r][j] = a[r][j] - factor * a[c][j];
      b[r] = b[r] - factor * b[c];
    }
  }
  return b;
}

}  // namespace h10ff
