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

#include "liftlab/lift.hpp"

#include <algorithm>
#include <cmath>

namespace liftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(sum_i exp(terms[i])) with the usual max shift; -inf terms drop out.
double log_sum_exp(const std::vector<double>& terms) {
  double peak = -kInf;
  for (double t : terms) peak = std::max(peak, t);
  if (peak == -kInf) return -kInf;
  double acc = 0.0;
  for (double t : terms) {
    if (t != -kInf) acc += std::exp(t - peak);
  }
  return peak + std::log(acc);
}

}  // namespace

Budget Budget::split(double eps, double lambda) {
  if (!(eps >= 0.0)) {
    throw Error(ErrorCode::kNegativeEntry, "budget eps must be nonnegative");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kNegativeEntry, "lambda must lie in [0, 1]");
  }
  return Budget{lambda * eps, (1.0 - lambda) * eps};
}

double LiftTable::worst_min() const {
  double v = kInf;
  for (double m : min_lift) v = std::min(v, m);
  return v;
}

double LiftTable::worst_max() const {
  double v = -kInf;
  for (double m : max_lift) v = std::max(v, m);
  return v;
}

double LiftTable::worst_ratio() const {
  double v = -kInf;
  for (double g : ratio) v = std::max(v, g);
  return v;
}

LiftTable lift_table(const JointDistribution& joint) {
  const std::size_t nr = joint.num_rows();
  const std::size_t nc = joint.num_cols();
  LiftTable t;
  t.lift = Mat(nr, nc, 0.0);
  t.prior = joint.row_sums();
  t.out_probs = joint.col_sums();
  t.out_labels = joint.col_labels();
  t.min_lift.assign(nc, kInf);
  t.max_lift.assign(nc, -kInf);
  t.ratio.assign(nc, 0.0);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t r = 0; r < nr; ++r) {
      const double l = joint(r, c) / (t.prior[r] * t.out_probs[c]);
      t.lift(r, c) = l;
      t.min_lift[c] = std::min(t.min_lift[c], l);
      t.max_lift[c] = std::max(t.max_lift[c], l);
    }
    t.ratio[c] =
        t.min_lift[c] > 0.0 ? t.max_lift[c] / t.min_lift[c] : kInf;
  }
  return t;
}

BudgetCheck check_budget(const LiftTable& table, const Budget& budget) {
  BudgetCheck r;
  double lo = kInf, hi = -kInf;
  for (std::size_t c = 0; c < table.num_outputs(); ++c) {
    if (table.min_lift[c] < lo) {
      lo = table.min_lift[c];
      r.worst_min_col = c;
    }
    if (table.max_lift[c] > hi) {
      hi = table.max_lift[c];
      r.worst_max_col = c;
    }
  }
  r.min_log_lift = std::log(lo);
  r.max_log_lift = std::log(hi);
  r.satisfied = r.min_log_lift >= -budget.eps_l - kLogTol &&
                r.max_log_lift <= budget.eps_u + kLogTol;
  return r;
}

bool check_ratio(const LiftTable& table, double eps) {
  for (std::size_t c = 0; c < table.num_outputs(); ++c) {
    if (std::log(table.ratio[c]) > eps + kLogTol) return false;
  }
  return true;
}

AverageMeasures avg_measures(const JointDistribution& joint, double alpha) {
  if (std::isnan(alpha) || alpha <= 1.0) {
    throw Error(ErrorCode::kAlphaOutOfRange,
                "order must be greater than 1, got " + std::to_string(alpha));
  }

  const LiftTable t = lift_table(joint);
  const std::size_t nr = t.num_secrets();
  const std::size_t nc = t.num_outputs();

  AverageMeasures m;
  for (std::size_t c = 0; c < nc; ++c) {
    double tv = 0.0, chi = 0.0;
    for (std::size_t r = 0; r < nr; ++r) {
      const double l = t.lift(r, c);
      const double p = joint(r, c);
      if (p > 0.0) m.mi += p * std::log(l);
      tv += t.prior[r] * std::abs(l - 1.0);
      chi += t.prior[r] * (l - 1.0) * (l - 1.0);
    }
    m.total_variation += 0.5 * t.out_probs[c] * tv;
    m.chi_square += t.out_probs[c] * chi;
  }

  if (std::isinf(alpha)) {
    // Both order-alpha informations converge to log E_C[max_r lift].
    std::vector<double> terms(nc);
    for (std::size_t c = 0; c < nc; ++c) {
      terms[c] = std::log(t.out_probs[c]) + std::log(t.max_lift[c]);
    }
    m.sibson = log_sum_exp(terms);
    m.arimoto = m.sibson;
    return m;
  }

  // The per-column alpha norms are evaluated in log space; lift raised to a
  // large order overflows double otherwise.
  std::vector<double> log_prior(nr), log_tilted(nr), inner(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    log_prior[r] = std::log(t.prior[r]);
    log_tilted[r] = alpha * log_prior[r];
  }
  const double tilt_norm = log_sum_exp(log_tilted);
  for (std::size_t r = 0; r < nr; ++r) log_tilted[r] -= tilt_norm;

  auto column_norm = [&](std::size_t c, const std::vector<double>& log_w) {
    for (std::size_t r = 0; r < nr; ++r) {
      const double l = t.lift(r, c);
      inner[r] = l > 0.0 ? log_w[r] + alpha * std::log(l) : -kInf;
    }
    return log_sum_exp(inner) / alpha;
  };

  std::vector<double> sib_terms(nc), ari_terms(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    const double log_pc = std::log(t.out_probs[c]);
    sib_terms[c] = log_pc + column_norm(c, log_prior);
    ari_terms[c] = log_pc + column_norm(c, log_tilted);
  }
  const double scale = alpha / (alpha - 1.0);
  m.sibson = scale * log_sum_exp(sib_terms);
  m.arimoto = scale * log_sum_exp(ari_terms);
  return m;
}

}  // namespace liftlab
