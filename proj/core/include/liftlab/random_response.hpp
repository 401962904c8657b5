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

#ifndef LIFTLAB_RANDOM_RESPONSE_HPP_
#define LIFTLAB_RANDOM_RESPONSE_HPP_

#include <cstddef>
#include <vector>

#include "liftlab/watchdog.hpp"

namespace liftlab {

// Geometry tolerances for the admissible-posterior polytope: vertex
// feasibility slack and duplicate detection share one scale, output weights
// below the support tolerance are pruned.
inline constexpr double kVertexTol = 1e-9;
inline constexpr double kSupportTol = 1e-10;

// Alphabet size past which the one-shot optimal mechanism refuses to run;
// its vertex enumeration grows combinatorially.
inline constexpr std::size_t kDefaultAlphabetCap = 12;

// Cap on candidate active sets a single enumeration may examine.
inline constexpr std::size_t kDefaultBasisCap = 5000000;

// The admissible posterior columns over a subset of the data alphabet:
// vectors v >= 0 with sum 1 and, for every secret r,
//   e^-eps_l P(r) <= sum_x P(r|x) v_x <= e^eps_u P(r).
// Any released output whose posterior column lies in this set keeps every
// lift within the budget.
struct LiftPolytope {
  std::vector<std::size_t> subset;  // column indices into the joint
  Mat cond;                         // P(r|x); rows secrets, cols subset order
  std::vector<double> prior;        // P(r)
  Budget budget;

  std::size_t dim() const { return subset.size(); }
};

LiftPolytope build_polytope(const JointDistribution& joint,
                            const std::vector<std::size_t>& subset,
                            const Budget& budget);

// Exhaustive active-set enumeration of the polytope's vertices: every
// solvable choice of dim-1 tight inequalities plus the simplex equality is
// checked against the remaining constraints at kVertexTol. Vertices come
// back deduplicated, cleaned (nonnegative, renormalized) and sorted.
// Throws kEmptyPolytope when no vertex is feasible and kCapExceeded when the
// candidate count exceeds basis_cap.
std::vector<std::vector<double>> enumerate_vertices(
    const LiftPolytope& polytope, std::size_t basis_cap = kDefaultBasisCap);

struct ColumnLp {
  std::vector<double> beta;            // one weight per vertex
  std::vector<std::size_t> support;    // indices with beta above kSupportTol
  double objective = 0.0;              // sum_k H(vertex_k) beta_k
};

// Picks output weights beta >= 0 with sum_k vertex_k beta_k = target,
// minimizing the entropy mixture sum_k H(vertex_k) beta_k; this is the
// channel synthesis step, where the optimum over the whole polytope is
// always attained on vertex columns. Throws kInfeasibleTarget when the
// target is not representable.
ColumnLp solve_column_lp(const std::vector<std::vector<double>>& vertices,
                         const std::vector<double>& target);

// One randomized-response block: the posterior columns actually used and
// their output probabilities (summing to the subset's mass).
struct SubsetResponse {
  std::vector<std::size_t> subset;
  std::vector<std::vector<double>> columns;
  std::vector<double> out_probs;
  bool merged_only = false;  // true when the block is a plain merge column
};

// Optimal lift-constrained randomized response over the whole alphabet:
// enumerate the polytope vertices, solve the weight program against the full
// data marginal, and release the resulting channel. Throws kCapExceeded
// when the alphabet exceeds alphabet_cap. An unbounded budget short-circuits
// to the identity release.
MechanismReport optimal_response(const JointDistribution& joint,
                                 const Budget& budget,
                                 std::size_t alphabet_cap = kDefaultAlphabetCap);

struct SubsetResponseResult {
  MechanismReport report;
  std::vector<std::vector<std::size_t>> subsets;  // accepted blocks, in order
  bool fell_back = false;  // true when even the all-in-one block failed and
                           // the subset-merge mechanism was released instead
};

// Randomized response run per subset of the greedy grouping: each group gets
// its own polytope and weight program; a group whose polytope is empty (or
// whose marginal is not representable) is unioned with the next group, then
// with previously accepted ones, before giving up and falling back to plain
// subset merging. Low-risk symbols pass through unchanged.
SubsetResponseResult subset_response_detailed(const JointDistribution& joint,
                                              const MeasureKind& kind,
                                              const Budget& budget);
MechanismReport subset_response_mechanism(const JointDistribution& joint,
                                          const MeasureKind& kind,
                                          const Budget& budget);

}  // namespace liftlab

#endif  // LIFTLAB_RANDOM_RESPONSE_HPP_
