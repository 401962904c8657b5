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

#ifndef LIFTLAB_WATCHDOG_HPP_
#define LIFTLAB_WATCHDOG_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "liftlab/measures.hpp"
#include "liftlab/prob.hpp"

namespace liftlab {

// Column indices of a joint split by whether releasing the symbol unchanged
// meets the privacy budget.
struct RiskSplit {
  std::vector<std::size_t> low;
  std::vector<std::size_t> high;
};

// A grouping of the column alphabet: `low` symbols pass through untouched,
// `groups` cover the remaining symbols; every symbol appears exactly once.
struct Partition {
  std::vector<std::size_t> low;
  std::vector<std::vector<std::size_t>> groups;
};

// Log-lift range of the indicator release "x in subset":
// eps_u = max_r log P(subset|r)/P(subset), eps_l = |min_r ...|.
struct SubsetLeakage {
  double eps_l = 0.0;
  double eps_u = 0.0;
};

// Classifies each column of `joint` against the budget, treating the column
// itself as the released value. kAlip and kLip compare the column's lift
// extremes two-sidedly, kLdp compares their ratio against
// e^(eps_l + eps_u), and the extended kinds compare the column's deviation
// scores against deviation_threshold(., eps_u) / (., eps_l).
RiskSplit partition_low_high(const JointDistribution& joint,
                             const MeasureKind& kind, const Budget& budget);

// Leakage of the merged super-symbol for a nonempty subset of columns
// (kEmptySubset otherwise).
SubsetLeakage subset_leakage(const JointDistribution& joint,
                             const std::vector<std::size_t>& subset);

// Score the greedy merging minimizes: lift extremes summed (kAlip), their
// ratio (kLdp), the larger absolute log extreme (kLip), or the two deviation
// scores summed (extended kinds). Lower is safer.
double merging_score(const JointDistribution& joint,
                     const std::vector<std::size_t>& subset,
                     const MeasureKind& kind);

// Whether the merged subset meets the budget under the kind's comparison.
bool subset_meets_budget(const JointDistribution& joint,
                         const std::vector<std::size_t>& subset,
                         const MeasureKind& kind, const Budget& budget);

// I(X;Y) of the merge channel induced by the partition, computed directly:
// H(X) - sum over groups of sum_{x in group} P(x) log(P(group)/P(x)).
double partition_utility(const JointDistribution& joint, const Partition& p);

// How each group is randomized. Every member of a group gets the same output
// distribution, which is what makes the channel invariant to the value
// within the group.
struct GroupRandomization {
  enum class Mode { kMerge, kUniform, kExplicit };
  Mode mode = Mode::kMerge;
  // One distribution per group when mode == kExplicit; dists[i].size() fixes
  // the group's output count.
  std::vector<std::vector<double>> dists;

  static GroupRandomization merge() { return {Mode::kMerge, {}}; }
  static GroupRandomization uniform() { return {Mode::kUniform, {}}; }
};

// Builds the channel: low symbols map to themselves, each group's members
// share one output distribution. Merged outputs are labeled by joining the
// member labels with '+'. Throws kMalformedR for bad explicit distributions,
// kEmptySubset for an empty group, kLabelMismatch if the partition does not
// cover the alphabet exactly once.
Channel x_invariant_channel(const std::vector<std::string>& labels,
                            const Partition& partition,
                            const GroupRandomization& randomization);

// Greedy grouping of the high-risk symbols (the subset merging heuristic):
// bootstrap each group from the riskiest remaining symbol, grow it by the
// symbol minimizing the merged score until the group meets the budget, and
// finally fold the last group into its best partner while it still violates
// and more than one group remains.
Partition subset_merging(const JointDistribution& joint,
                         const MeasureKind& kind, const Budget& budget);

// What a synthesized mechanism achieved.
struct MechanismReport {
  Channel channel;          // P(y|x) actually released
  Partition partition;      // grouping behind the channel, when one exists
  double utility_mi = 0.0;  // I(X;Y) in nats
  double nmi = 0.0;         // I(X;Y) / H(X)
  double max_lift_leak = 0.0;  // max over outputs of log max-lift
  double min_lift_leak = 0.0;  // max over outputs of |log min-lift|
  bool satisfied = false;      // budget check on the released joint
  // Leakage of the final group when the budget could not be met; zero
  // otherwise.
  double residual_eps_l = 0.0;
  double residual_eps_u = 0.0;
};

// Composes the channel with the joint and fills in every report field.
MechanismReport assemble_report(const JointDistribution& joint,
                                const MeasureKind& kind, const Budget& budget,
                                Partition partition, Channel channel);

// Pass-through release: every symbol maps to itself, utility is the full
// input entropy, leakage is that of the joint itself.
MechanismReport identity_mechanism(const JointDistribution& joint,
                                   const MeasureKind& kind,
                                   const Budget& budget);

// Merge every high-risk symbol into one super-symbol.
MechanismReport complete_merge_mechanism(const JointDistribution& joint,
                                         const MeasureKind& kind,
                                         const Budget& budget);

// Merge within the greedy grouping instead, which refines the complete merge
// and never loses utility relative to it.
MechanismReport subset_merge_mechanism(const JointDistribution& joint,
                                       const MeasureKind& kind,
                                       const Budget& budget);

}  // namespace liftlab

#endif  // LIFTLAB_WATCHDOG_HPP_
