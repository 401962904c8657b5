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

#include "liftlab/watchdog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace liftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lift extremes and deviation scores of one released column, whether that
// column is a single symbol or a merged subset.
struct ColScore {
  double min_l = kInf;
  double max_l = -kInf;
  double dev = 0.0;      // deviation of the lift column (extended kinds)
  double inv_dev = 0.0;  // deviation of the reciprocal column
};

double stable_alpha_norm(const std::vector<double>& prior,
                         const std::vector<double>& values, double alpha) {
  double peak = -kInf;
  std::vector<double> logs(values.size(), -kInf);
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r] > 0.0) {
      logs[r] = std::log(prior[r]) + alpha * std::log(values[r]);
      peak = std::max(peak, logs[r]);
    }
  }
  if (peak == -kInf) return 0.0;
  double acc = 0.0;
  for (double t : logs) {
    if (t != -kInf) acc += std::exp(t - peak);
  }
  return std::exp((peak + std::log(acc)) / alpha);
}

ColScore score_lifts(const std::vector<double>& lifts,
                     const std::vector<double>& prior,
                     const MeasureKind& kind) {
  ColScore s;
  for (double l : lifts) {
    s.min_l = std::min(s.min_l, l);
    s.max_l = std::max(s.max_l, l);
  }
  if (kind.is_extended()) {
    switch (kind.deviation()) {
      case Deviation::kEll1: {
        double d = 0.0, id = 0.0;
        for (std::size_t r = 0; r < lifts.size(); ++r) {
          d += prior[r] * std::abs(lifts[r] - 1.0);
          id += lifts[r] > 0.0 ? prior[r] * std::abs(1.0 / lifts[r] - 1.0)
                               : kInf;
        }
        s.dev = d;
        s.inv_dev = id;
        break;
      }
      case Deviation::kChi2: {
        double d = 0.0, id = 0.0;
        for (std::size_t r = 0; r < lifts.size(); ++r) {
          const double a = lifts[r] - 1.0;
          d += prior[r] * a * a;
          if (lifts[r] > 0.0) {
            const double b = 1.0 / lifts[r] - 1.0;
            id += prior[r] * b * b;
          } else {
            id = kInf;
          }
        }
        s.dev = d;
        s.inv_dev = id;
        break;
      }
      case Deviation::kAlpha: {
        s.dev = stable_alpha_norm(prior, lifts, kind.alpha);
        std::vector<double> inv(lifts.size(), 0.0);
        bool zero = false;
        for (std::size_t r = 0; r < lifts.size(); ++r) {
          if (lifts[r] > 0.0) {
            inv[r] = 1.0 / lifts[r];
          } else {
            zero = true;
          }
        }
        s.inv_dev = zero ? kInf : stable_alpha_norm(prior, inv, kind.alpha);
        break;
      }
    }
  }
  return s;
}

bool score_meets(const ColScore& s, const MeasureKind& kind,
                 const Budget& budget) {
  switch (kind.tag) {
    case MeasureTag::kAlip:
    case MeasureTag::kLip:
      return std::log(s.min_l) >= -budget.eps_l - kLogTol &&
             std::log(s.max_l) <= budget.eps_u + kLogTol;
    case MeasureTag::kLdp: {
      const double ratio = s.min_l > 0.0 ? s.max_l / s.min_l : kInf;
      return std::log(ratio) <= budget.ratio_eps() + kLogTol;
    }
    default: {
      const Deviation d = kind.deviation();
      return s.dev <=
                 deviation_threshold(d, kind.alpha, budget.eps_u) + kLogTol &&
             s.inv_dev <=
                 deviation_threshold(d, kind.alpha, budget.eps_l) + kLogTol;
    }
  }
}

double score_omega(const ColScore& s, const MeasureKind& kind) {
  switch (kind.tag) {
    case MeasureTag::kAlip:
      return s.max_l + s.min_l;
    case MeasureTag::kLdp:
      return s.min_l > 0.0 ? s.max_l / s.min_l : kInf;
    case MeasureTag::kLip:
      return std::max(std::log(s.max_l), std::abs(std::log(s.min_l)));
    default:
      return s.dev + s.inv_dev;
  }
}

// Running sums for a growing subset: per-secret joint mass and total mass.
struct SubsetSums {
  std::vector<double> secret_mass;
  double mass = 0.0;

  explicit SubsetSums(std::size_t secrets) : secret_mass(secrets, 0.0) {}

  void add_column(const JointDistribution& joint, std::size_t x) {
    for (std::size_t r = 0; r < joint.num_rows(); ++r) {
      secret_mass[r] += joint(r, x);
    }
    mass += joint.col_sums()[x];
  }

  void add(const SubsetSums& other) {
    for (std::size_t r = 0; r < secret_mass.size(); ++r) {
      secret_mass[r] += other.secret_mass[r];
    }
    mass += other.mass;
  }

  // Lifts of the merged super-symbol, optionally with one extra column.
  std::vector<double> lifts(const JointDistribution& joint,
                            const std::size_t* extra) const {
    std::vector<double> out(secret_mass.size());
    double m = mass;
    if (extra != nullptr) m += joint.col_sums()[*extra];
    for (std::size_t r = 0; r < out.size(); ++r) {
      double num = secret_mass[r];
      if (extra != nullptr) num += joint(r, *extra);
      out[r] = num / (joint.row_sums()[r] * m);
    }
    return out;
  }
};

SubsetSums sums_of(const JointDistribution& joint,
                   const std::vector<std::size_t>& subset) {
  SubsetSums s(joint.num_rows());
  for (std::size_t x : subset) s.add_column(joint, x);
  return s;
}

void check_subset(const JointDistribution& joint,
                  const std::vector<std::size_t>& subset) {
  if (subset.empty()) {
    throw Error(ErrorCode::kEmptySubset, "subset has no symbols");
  }
  std::vector<bool> seen(joint.num_cols(), false);
  for (std::size_t x : subset) {
    if (x >= joint.num_cols()) {
      throw Error(ErrorCode::kLabelMismatch,
                  "subset index " + std::to_string(x) + " out of range");
    }
    if (seen[x]) {
      throw Error(ErrorCode::kLabelMismatch,
                  "subset repeats index " + std::to_string(x));
    }
    seen[x] = true;
  }
}

std::string join_labels(const std::vector<std::string>& labels,
                        const std::vector<std::size_t>& subset) {
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i > 0) out += '+';
    out += labels[subset[i]];
  }
  return out;
}

}  // namespace

MechanismReport identity_mechanism(const JointDistribution& joint,
                                   const MeasureKind& kind,
                                   const Budget& budget) {
  MechanismReport r;
  r.channel = Channel::identity(joint.col_labels());
  r.partition.low.resize(joint.num_cols());
  std::iota(r.partition.low.begin(), r.partition.low.end(), 0);
  // Releasing X itself carries all of its entropy; set the utility
  // identities directly instead of round-tripping through logs.
  r.utility_mi = entropy(joint.col_sums());
  r.nmi = 1.0;
  const LiftTable t = lift_table(joint);
  r.max_lift_leak = std::log(t.worst_max());
  r.min_lift_leak = std::abs(std::log(t.worst_min()));
  r.satisfied = true;
  for (std::size_t c = 0; c < t.num_outputs() && r.satisfied; ++c) {
    std::vector<double> col(t.num_secrets());
    for (std::size_t rr = 0; rr < t.num_secrets(); ++rr) {
      col[rr] = t.lift(rr, c);
    }
    r.satisfied = score_meets(score_lifts(col, t.prior, kind), kind, budget);
  }
  return r;
}

RiskSplit partition_low_high(const JointDistribution& joint,
                             const MeasureKind& kind, const Budget& budget) {
  const LiftTable t = lift_table(joint);
  RiskSplit split;
  std::vector<double> col(t.num_secrets());
  for (std::size_t c = 0; c < t.num_outputs(); ++c) {
    for (std::size_t r = 0; r < t.num_secrets(); ++r) col[r] = t.lift(r, c);
    if (score_meets(score_lifts(col, t.prior, kind), kind, budget)) {
      split.low.push_back(c);
    } else {
      split.high.push_back(c);
    }
  }
  return split;
}

SubsetLeakage subset_leakage(const JointDistribution& joint,
                             const std::vector<std::size_t>& subset) {
  check_subset(joint, subset);
  const auto lifts = sums_of(joint, subset).lifts(joint, nullptr);
  double lo = kInf, hi = -kInf;
  for (double l : lifts) {
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  return SubsetLeakage{std::abs(std::log(lo)), std::log(hi)};
}

double merging_score(const JointDistribution& joint,
                     const std::vector<std::size_t>& subset,
                     const MeasureKind& kind) {
  check_subset(joint, subset);
  const auto lifts = sums_of(joint, subset).lifts(joint, nullptr);
  return score_omega(score_lifts(lifts, joint.row_sums(), kind), kind);
}

bool subset_meets_budget(const JointDistribution& joint,
                         const std::vector<std::size_t>& subset,
                         const MeasureKind& kind, const Budget& budget) {
  check_subset(joint, subset);
  const auto lifts = sums_of(joint, subset).lifts(joint, nullptr);
  return score_meets(score_lifts(lifts, joint.row_sums(), kind), kind, budget);
}

double partition_utility(const JointDistribution& joint, const Partition& p) {
  const auto& px = joint.col_sums();
  double loss = 0.0;
  for (const auto& group : p.groups) {
    double mass = 0.0;
    for (std::size_t x : group) mass += px[x];
    for (std::size_t x : group) loss += px[x] * std::log(mass / px[x]);
  }
  return entropy(px) - loss;
}

Channel x_invariant_channel(const std::vector<std::string>& labels,
                            const Partition& partition,
                            const GroupRandomization& randomization) {
  const std::size_t n = labels.size();
  std::vector<bool> seen(n, false);
  auto mark = [&](std::size_t x) {
    if (x >= n) {
      throw Error(ErrorCode::kLabelMismatch,
                  "partition index " + std::to_string(x) + " out of range");
    }
    if (seen[x]) {
      throw Error(ErrorCode::kLabelMismatch,
                  "partition repeats index " + std::to_string(x));
    }
    seen[x] = true;
  };
  for (std::size_t x : partition.low) mark(x);
  for (const auto& group : partition.groups) {
    if (group.empty()) {
      throw Error(ErrorCode::kEmptySubset, "partition contains empty group");
    }
    for (std::size_t x : group) mark(x);
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!seen[x]) {
      throw Error(ErrorCode::kLabelMismatch,
                  "partition misses symbol " + labels[x]);
    }
  }

  const bool explicit_mode =
      randomization.mode == GroupRandomization::Mode::kExplicit;
  std::vector<std::vector<double>> dists;
  if (explicit_mode) {
    if (randomization.dists.size() != partition.groups.size()) {
      throw Error(ErrorCode::kMalformedR,
                  "expected " + std::to_string(partition.groups.size()) +
                      " output distributions, got " +
                      std::to_string(randomization.dists.size()));
    }
    for (const auto& dist : randomization.dists) {
      if (dist.empty()) {
        throw Error(ErrorCode::kMalformedR, "output distribution is empty");
      }
      double total = 0.0;
      for (double v : dist) {
        if (!std::isfinite(v) || v < 0.0) {
          throw Error(ErrorCode::kMalformedR,
                      "output distribution entries must be nonnegative");
        }
        total += v;
      }
      if (std::abs(total - 1.0) > kValidationTol) {
        throw Error(ErrorCode::kMalformedR,
                    "output distribution sums to " + std::to_string(total));
      }
      auto normalized = dist;
      for (double& v : normalized) v /= total;
      dists.push_back(std::move(normalized));
    }
  }

  std::vector<std::size_t> low = partition.low;
  std::sort(low.begin(), low.end());

  std::vector<std::string> out_labels;
  std::vector<std::size_t> group_offset(partition.groups.size(), 0);
  for (std::size_t x : low) out_labels.push_back(labels[x]);
  for (std::size_t g = 0; g < partition.groups.size(); ++g) {
    group_offset[g] = out_labels.size();
    const auto& group = partition.groups[g];
    const std::string base = join_labels(labels, group);
    switch (randomization.mode) {
      case GroupRandomization::Mode::kMerge:
        out_labels.push_back(base);
        break;
      case GroupRandomization::Mode::kUniform:
        for (std::size_t x : group) out_labels.push_back(labels[x]);
        break;
      case GroupRandomization::Mode::kExplicit:
        if (dists[g].size() == 1) {
          out_labels.push_back(base);
        } else {
          for (std::size_t k = 1; k <= dists[g].size(); ++k) {
            out_labels.push_back(base + "#" + std::to_string(k));
          }
        }
        break;
    }
  }

  Mat rows(n, out_labels.size(), 0.0);
  for (std::size_t i = 0; i < low.size(); ++i) rows(low[i], i) = 1.0;
  for (std::size_t g = 0; g < partition.groups.size(); ++g) {
    const auto& group = partition.groups[g];
    const std::size_t off = group_offset[g];
    for (std::size_t x : group) {
      switch (randomization.mode) {
        case GroupRandomization::Mode::kMerge:
          rows(x, off) = 1.0;
          break;
        case GroupRandomization::Mode::kUniform:
          for (std::size_t k = 0; k < group.size(); ++k) {
            rows(x, off + k) = 1.0 / static_cast<double>(group.size());
          }
          break;
        case GroupRandomization::Mode::kExplicit:
          for (std::size_t k = 0; k < dists[g].size(); ++k) {
            rows(x, off + k) = dists[g][k];
          }
          break;
      }
    }
  }
  return Channel::validate(std::move(rows), labels, std::move(out_labels));
}

Partition subset_merging(const JointDistribution& joint,
                         const MeasureKind& kind, const Budget& budget) {
  RiskSplit split = partition_low_high(joint, kind, budget);
  Partition part;
  part.low = split.low;
  if (split.high.empty()) return part;

  const auto& prior = joint.row_sums();
  std::vector<std::size_t> pool = split.high;

  // Single-symbol risk scores for the bootstrap step.
  std::vector<double> single_score(joint.num_cols(), 0.0);
  {
    const LiftTable t = lift_table(joint);
    std::vector<double> col(t.num_secrets());
    for (std::size_t x : pool) {
      for (std::size_t r = 0; r < t.num_secrets(); ++r) col[r] = t.lift(r, x);
      single_score[x] = score_omega(score_lifts(col, prior, kind), kind);
    }
  }

  while (!pool.empty()) {
    // Riskiest remaining symbol seeds the group; ties go to the lowest
    // symbol index because the pool is scanned in ascending order.
    std::size_t seed_pos = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      if (single_score[pool[i]] > single_score[pool[seed_pos]]) seed_pos = i;
    }
    std::vector<std::size_t> group = {pool[seed_pos]};
    SubsetSums sums(joint.num_rows());
    sums.add_column(joint, pool[seed_pos]);
    pool.erase(pool.begin() + seed_pos);

    while (!pool.empty()) {
      const auto lifts = sums.lifts(joint, nullptr);
      if (score_meets(score_lifts(lifts, prior, kind), kind, budget)) break;
      std::size_t best_pos = 0;
      double best = kInf;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        const auto cand = sums.lifts(joint, &pool[i]);
        const double w = score_omega(score_lifts(cand, prior, kind), kind);
        if (w < best) {
          best = w;
          best_pos = i;
        }
      }
      group.push_back(pool[best_pos]);
      sums.add_column(joint, pool[best_pos]);
      pool.erase(pool.begin() + best_pos);
    }
    std::sort(group.begin(), group.end());
    part.groups.push_back(std::move(group));
  }

  // The last group may have run out of symbols before meeting the budget;
  // fold it into whichever earlier group keeps the merged score lowest.
  while (part.groups.size() > 1) {
    const auto& last = part.groups.back();
    if (subset_meets_budget(joint, last, kind, budget)) break;
    SubsetSums last_sums = sums_of(joint, last);
    std::size_t best_i = 0;
    double best = kInf;
    for (std::size_t i = 0; i + 1 < part.groups.size(); ++i) {
      SubsetSums merged = sums_of(joint, part.groups[i]);
      merged.add(last_sums);
      const auto lifts = merged.lifts(joint, nullptr);
      const double w = score_omega(score_lifts(lifts, prior, kind), kind);
      if (w < best) {
        best = w;
        best_i = i;
      }
    }
    std::vector<std::size_t> merged = part.groups[best_i];
    merged.insert(merged.end(), last.begin(), last.end());
    std::sort(merged.begin(), merged.end());
    part.groups.pop_back();
    part.groups.erase(part.groups.begin() + best_i);
    part.groups.push_back(std::move(merged));
  }
  return part;
}

MechanismReport assemble_report(const JointDistribution& joint,
                                const MeasureKind& kind, const Budget& budget,
                                Partition partition, Channel channel) {
  MechanismReport r;
  const JointDistribution released = compose_channel(joint, channel);
  const JointDistribution usage =
      joint_from_marginal_channel(joint.col_marginal(), channel);
  r.utility_mi = mutual_information(usage);
  r.nmi = r.utility_mi / entropy(joint.col_sums());

  const LiftTable t = lift_table(released);
  r.max_lift_leak = std::log(t.worst_max());
  r.min_lift_leak = std::abs(std::log(t.worst_min()));
  r.satisfied = true;
  std::vector<double> col(t.num_secrets());
  for (std::size_t c = 0; c < t.num_outputs() && r.satisfied; ++c) {
    for (std::size_t rr = 0; rr < t.num_secrets(); ++rr) {
      col[rr] = t.lift(rr, c);
    }
    r.satisfied = score_meets(score_lifts(col, t.prior, kind), kind, budget);
  }
  if (!r.satisfied && !partition.groups.empty()) {
    const SubsetLeakage leak = subset_leakage(joint, partition.groups.back());
    r.residual_eps_l = leak.eps_l;
    r.residual_eps_u = leak.eps_u;
  }
  r.partition = std::move(partition);
  r.channel = std::move(channel);
  return r;
}

MechanismReport complete_merge_mechanism(const JointDistribution& joint,
                                         const MeasureKind& kind,
                                         const Budget& budget) {
  RiskSplit split = partition_low_high(joint, kind, budget);
  if (split.high.empty()) return identity_mechanism(joint, kind, budget);
  Partition part;
  part.low = std::move(split.low);
  part.groups.push_back(std::move(split.high));
  Channel channel = x_invariant_channel(joint.col_labels(), part,
                                        GroupRandomization::merge());
  return assemble_report(joint, kind, budget, std::move(part),
                         std::move(channel));
}

MechanismReport subset_merge_mechanism(const JointDistribution& joint,
                                       const MeasureKind& kind,
                                       const Budget& budget) {
  Partition part = subset_merging(joint, kind, budget);
  if (part.groups.empty()) return identity_mechanism(joint, kind, budget);
  Channel channel = x_invariant_channel(joint.col_labels(), part,
                                        GroupRandomization::merge());
  return assemble_report(joint, kind, budget, std::move(part),
                         std::move(channel));
}

}  // namespace liftlab
