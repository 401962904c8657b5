// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace liftlab::internal {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-8;

// Tableau with rows 0..m-1 the constraints and row m the objective. Column
// layout: structural variables, then artificials, then the rhs.
struct Tableau {
  std::size_t m, n_total;
  std::vector<std::vector<double>> t;
  std::vector<std::size_t> basis;

  Tableau(std::size_t rows, std::size_t cols)
      : m(rows), n_total(cols), t(rows + 1, std::vector<double>(cols + 1, 0.0)),
        basis(rows, 0) {}

  void pivot(std::size_t row, std::size_t col) {
    const double p = t[row][col];
    for (double& v : t[row]) v /= p;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == row) continue;
      const double f = t[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n_total; ++c) t[r][c] -= f * t[row][c];
    }
    basis[row] = col;
  }

  // One phase of Bland's-rule pivoting on the current objective row.
  // `allowed` bounds the columns that may enter. Returns false on an
  // unbounded ray.
  bool run(std::size_t allowed) {
    while (true) {
      std::size_t enter = allowed;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (t[m][c] < -kPivotTol) {
          enter = c;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = m;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m; ++r) {
        if (t[r][enter] > kPivotTol) {
          const double ratio = t[r][n_total] / t[r][enter];
          if (leave == m || ratio < best ||
              (ratio == best && basis[r] < basis[leave])) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_equality_lp(const Mat& a, const std::vector<double>& b,
                           const std::vector<double>& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Tableau tab(m, n + m);

  for (std::size_t r = 0; r < m; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.t[r][j] = sign * a(r, j);
    tab.t[r][n + r] = 1.0;
    tab.t[r][tab.n_total] = sign * b[r];
    tab.basis[r] = n + r;
  }
  // Phase 1: minimize the artificial total, expressed through the basis.
  for (std::size_t j = 0; j <= tab.n_total; ++j) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m; ++r) acc += tab.t[r][j];
    tab.t[m][j] = (j >= n && j < n + m) ? 0.0 : -acc;
  }
  tab.t[m][tab.n_total] = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    tab.t[m][tab.n_total] -= tab.t[r][tab.n_total];
  }
  if (!tab.run(n + m)) return {LpStatus::kInfeasible, {}, 0.0};

  double infeas = -tab.t[m][tab.n_total];
  if (infeas > kFeasTol) return {LpStatus::kInfeasible, {}, 0.0};

  // Drive leftover artificials out of the basis where possible; rows that
  // stay artificial are redundant constraints with zero value.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] >= n) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(tab.t[r][j]) > kFeasTol) {
          tab.pivot(r, j);
          break;
        }
      }
    }
  }

  // Phase 2 objective: reduced costs of c for the current basis.
  for (std::size_t j = 0; j <= tab.n_total; ++j) tab.t[m][j] = 0.0;
  for (std::size_t j = 0; j < n; ++j) tab.t[m][j] = c[j];
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] < n) {
      const double f = c[tab.basis[r]];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= tab.n_total; ++j) {
        tab.t[m][j] -= f * tab.t[r][j];
      }
    }
  }
  // Artificials must not re-enter.
  if (!tab.run(n)) return {LpStatus::kUnbounded, {}, 0.0};

  LpResult res;
  res.status = LpStatus::kOptimal;
  res.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] < n) res.x[tab.basis[r]] = tab.t[r][tab.n_total];
  }
  res.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

}  // namespace liftlab::internal
