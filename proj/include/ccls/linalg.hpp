#ifndef CCLS_LINALG_HPP
#define CCLS_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "ccls/rational.hpp"

namespace ccls::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major, rectangular

inline Matrix from_integers(const std::vector<std::vector<long long>>& rows) {
  Matrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    Vector v;
    v.reserve(r.size());
    for (long long x : r) v.emplace_back(static_cast<long>(x));
    m.push_back(std::move(v));
  }
  return m;
}

inline Matrix transpose(const Matrix& a, std::size_t cols_if_empty = 0) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : cols_if_empty;
  Matrix t(cols, Vector(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

/// Reduces `a` in place to reduced row echelon form and returns the pivot
/// column of each nonzero row.
inline std::vector<std::size_t> rref(Matrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    const Rational inv = 1 / a[row][col];
    for (std::size_t j = col; j < cols; ++j) a[row][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Matrix a, std::size_t cols) { return rref(a, cols).size(); }

/// Basis of {x : a x = 0}, one vector per free column.
inline std::vector<Vector> nullspace(Matrix a, std::size_t cols) {
  const auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector x(cols);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
  SolveStatus status;
  Vector solution;  // filled only when status == Unique
};

/// Solves a x = rhs exactly.
inline SolveResult solve(const Matrix& a, const Vector& rhs, std::size_t cols) {
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
  const auto pivots = rref(aug, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return {SolveStatus::Inconsistent, {}};
  if (pivots.size() < cols) return {SolveStatus::Underdetermined, {}};
  Vector x(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return {SolveStatus::Unique, std::move(x)};
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray whose first nonzero entry is positive.
inline std::vector<long long> primitive_integer(const Vector& v) {
  BigInt lcm = 1;
  for (const auto& x : v) {
    if (x != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<BigInt> ints;
  ints.reserve(v.size());
  BigInt g = 0;
  for (const auto& x : v) {
    BigInt n = x.get_num() * (lcm / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(std::move(n));
  }
  if (g == 0) return std::vector<long long>(v.size(), 0);
  int sign = 1;
  for (const auto& n : ints) {
    if (n != 0) {
      sign = n < 0 ? -1 : 1;
      break;
    }
  }
  std::vector<long long> out;
  out.reserve(v.size());
  for (const auto& n : ints) {
    BigInt q = n / g * sign;
    out.push_back(q.get_si());
  }
  return out;
}

}  // namespace ccls::linalg

#endif  // CCLS_LINALG_HPP
