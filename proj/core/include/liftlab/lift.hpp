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

#ifndef LIFTLAB_LIFT_HPP_
#define LIFTLAB_LIFT_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "liftlab/prob.hpp"

namespace liftlab {

// Threshold comparisons against privacy budgets happen in log space with
// this absolute slack, so boundary instances are accepted.
inline constexpr double kLogTol = 1e-9;

// Two-sided log-lift budget. eps_l bounds how far the minimum lift may fall
// below 1 (min lift >= e^-eps_l), eps_u bounds the maximum lift
// (max lift <= e^eps_u). +infinity on both sides means unconstrained.
struct Budget {
  double eps_l = 0.0;
  double eps_u = 0.0;

  // Splits a total budget eps into (lambda * eps, (1 - lambda) * eps).
  static Budget split(double eps, double lambda);
  static Budget symmetric(double eps) { return Budget{eps, eps}; }
  static Budget unbounded() {
    const double inf = std::numeric_limits<double>::infinity();
    return Budget{inf, inf};
  }

  // The ratio budget the pair implies: max/min lift ratio <= e^(eps_l+eps_u).
  double ratio_eps() const { return eps_l + eps_u; }
  bool is_unbounded() const {
    return std::isinf(eps_l) && std::isinf(eps_u);
  }
};

// Pointwise lift of a joint: lift(r, c) = P(r, c) / (P(r) P(c)), plus the
// per-column extremes. For a privacy joint the rows are the secret alphabet
// and the columns are the released alphabet.
struct LiftTable {
  Mat lift;                       // lift(r, c)
  std::vector<double> prior;      // P(r), the secret marginal
  std::vector<double> out_probs;  // P(c)
  std::vector<double> min_lift;   // per column: min_r lift(r, c)
  std::vector<double> max_lift;   // per column: max_r lift(r, c)
  std::vector<double> ratio;      // per column: max / min (inf if min == 0)
  std::vector<std::string> out_labels;

  std::size_t num_secrets() const { return lift.rows(); }
  std::size_t num_outputs() const { return lift.cols(); }

  double worst_min() const;   // min over columns of min_lift
  double worst_max() const;   // max over columns of max_lift
  double worst_ratio() const; // max over columns of ratio
};

LiftTable lift_table(const JointDistribution& joint);

// Outcome of checking a two-sided budget column by column.
struct BudgetCheck {
  bool satisfied = false;
  // Columns attaining the extreme min and max lift.
  std::size_t worst_min_col = 0;
  std::size_t worst_max_col = 0;
  double min_log_lift = 0.0;  // log of the smallest lift (-inf if a zero)
  double max_log_lift = 0.0;  // log of the largest lift
};

// Checks min lift >= e^-eps_l and max lift <= e^eps_u for every column.
BudgetCheck check_budget(const LiftTable& table, const Budget& budget);

// Checks the per-column ratio max/min <= e^eps for every column.
bool check_ratio(const LiftTable& table, double eps);

// Average leakage measures of a joint, all in nats.
struct AverageMeasures {
  double mi = 0.0;               // I(R;C)
  double total_variation = 0.0;  // T(R;C) = E_C[ sum_r P(r) |lift - 1| ] / 2
  double chi_square = 0.0;       // E_C[ sum_r P(r) (lift - 1)^2 ]
  double sibson = 0.0;           // order-alpha Sibson information
  double arimoto = 0.0;          // order-alpha Arimoto information
};

// alpha must be > 1; +infinity selects the limit, where both order-alpha
// informations become log E_C[max_r lift], the multiplicative gain an
// adversary gets on its best guess. Throws kAlphaOutOfRange otherwise.
AverageMeasures avg_measures(const JointDistribution& joint, double alpha);

}  // namespace liftlab

#endif  // LIFTLAB_LIFT_HPP_
