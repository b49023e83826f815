#pragma once

// Exact phase-I simplex for {x >= 0 : M x = b}. Bland's rule, dense tableau.
// An infeasible system yields a Farkas vector y with yᵀM <= 0 and yᵀb > 0.

#include "tilingobs/rational.hpp"

#include <cstddef>
#include <vector>

namespace tilingobs {

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> x;  // primal point when feasible
  std::vector<Rational> y;  // Farkas vector when infeasible
  std::size_t pivots = 0;
};

using DenseMatrix = std::vector<std::vector<Rational>>;

inline FeasibilityResult solve_feasibility(const DenseMatrix& m, const std::vector<Rational>& b) {
  const std::size_t rows = b.size();
  if (m.size() != rows) throw InputError("constraint matrix and right-hand side disagree in size");
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (const auto& r : m)
    if (r.size() != cols) throw InputError("ragged constraint matrix");

  // Row i is negated when b_i < 0 so that the artificial basis starts feasible.
  std::vector<int> flip(rows, 1);
  const std::size_t width = cols + rows;
  DenseMatrix t(rows, std::vector<Rational>(width));
  std::vector<Rational> rhs(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (b[i] < 0) flip[i] = -1;
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = flip[i] * m[i][j];
    t[i][cols + i] = 1;
    rhs[i] = flip[i] * b[i];
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

  // Reduced costs of the phase-I objective Σ artificials, and its value.
  std::vector<Rational> reduced(width);
  Rational objective = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    objective += rhs[i];
    for (std::size_t j = 0; j < cols; ++j) reduced[j] -= t[i][j];
  }

  FeasibilityResult out;
  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j)
      if (reduced[j] < 0) { enter = j; break; }
    if (enter == width) break;

    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (!(t[i][enter] > 0)) continue;
      Rational ratio = rhs[i] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) throw InvariantError("phase-I objective is unbounded below");

    const Rational piv = t[leave][enter];
    for (std::size_t j = 0; j < width; ++j)
      if (t[leave][j] != 0) t[leave][j] /= piv;
    rhs[leave] /= piv;
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width; ++j)
      if (t[leave][j] != 0) nz.push_back(j);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (auto j : nz) t[i][j] -= f * t[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    if (reduced[enter] != 0) {
      const Rational f = reduced[enter];
      for (auto j : nz) reduced[j] -= f * t[leave][j];
      objective += f * rhs[leave];
    }
    basis[leave] = enter;
    ++out.pivots;
  }

  if (objective == 0) {
    out.feasible = true;
    out.x.assign(cols, Rational(0));
    for (std::size_t i = 0; i < rows; ++i)
      if (basis[i] < cols) out.x[basis[i]] = rhs[i];
    return out;
  }
  // reduced cost of artificial i is 1 - y_i
  out.y.resize(rows);
  Rational yb = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    out.y[i] = flip[i] * (1 - reduced[cols + i]);
    yb += out.y[i] * b[i];
  }
  if (yb != objective) throw InvariantError("Farkas vector does not reproduce the phase-I optimum");
  return out;
}

}  // namespace tilingobs
