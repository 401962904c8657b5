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

#ifndef LIFTLAB_PROB_HPP_
#define LIFTLAB_PROB_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "liftlab/errors.hpp"
#include "liftlab/matrix.hpp"

namespace liftlab {

// Tolerance for user-supplied distributions: a table whose total is within
// this of 1 is renormalized, anything further out is rejected.
inline constexpr double kValidationTol = 1e-9;
// Tolerance for invariants the library itself maintains after normalization.
inline constexpr double kInvariantTol = 1e-12;
// Sampled joints are rejected until every cell clears this floor, so lifts
// and logs stay finite downstream.
inline constexpr double kMinSampledCell = 1e-9;

// A labeled probability vector.
struct Marginal {
  std::vector<std::string> labels;
  std::vector<double> probs;
};

// A validated joint distribution over two finite alphabets. Rows and columns
// both have full support and the table sums to exactly 1 after validation.
// Instances are immutable; all members are const-qualified reads, so sharing
// one instance across threads is safe.
class JointDistribution {
 public:
  // An empty placeholder; every usable instance comes from validate().
  JointDistribution() = default;

  // Validates and normalizes `table`. Throws Error with code
  //   kLabelMismatch      if label counts do not match the table shape or
  //                       labels repeat within an axis,
  //   kNegativeEntry      if any entry is negative or not finite,
  //   kSumOutOfTolerance  if the total is farther than kValidationTol from 1,
  //   kEmptySupport       if any row or column sums to zero.
  static JointDistribution validate(Mat table,
                                    std::vector<std::string> row_labels,
                                    std::vector<std::string> col_labels);

  std::size_t num_rows() const { return probs_.rows(); }
  std::size_t num_cols() const { return probs_.cols(); }

  double operator()(std::size_t r, std::size_t c) const { return probs_(r, c); }
  const Mat& probs() const { return probs_; }

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  const std::vector<double>& row_sums() const { return row_sums_; }
  const std::vector<double>& col_sums() const { return col_sums_; }

  Marginal row_marginal() const { return {row_labels_, row_sums_}; }
  Marginal col_marginal() const { return {col_labels_, col_sums_}; }

 private:
  Mat probs_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<double> row_sums_;
  std::vector<double> col_sums_;
};

// A conditional distribution table q(y|x): one row per input symbol, each row
// a distribution over the output alphabet. Rows are renormalized on
// validation under the same tolerance as JointDistribution.
class Channel {
 public:
  // An empty placeholder; every usable instance comes from validate().
  Channel() = default;

  static Channel validate(Mat rows, std::vector<std::string> in_labels,
                          std::vector<std::string> out_labels);

  static Channel identity(std::vector<std::string> labels);

  std::size_t num_inputs() const { return rows_.rows(); }
  std::size_t num_outputs() const { return rows_.cols(); }

  // q(y|x)
  double operator()(std::size_t x, std::size_t y) const { return rows_(x, y); }
  const Mat& rows() const { return rows_; }

  const std::vector<std::string>& in_labels() const { return in_labels_; }
  const std::vector<std::string>& out_labels() const { return out_labels_; }

 private:
  Mat rows_;
  std::vector<std::string> in_labels_;
  std::vector<std::string> out_labels_;
};

// P(r, y) = sum_c P(r, c) q(y|c). The channel acts on the joint's column
// alphabet; in/column labels must agree (kLabelMismatch otherwise). Output
// columns with zero probability are dropped, so the result is again a valid
// full-support joint; surviving output labels are kept in channel order.
JointDistribution compose_channel(const JointDistribution& joint,
                                  const Channel& channel);

// Joint over (input, output) from an input marginal and a channel:
// P(x, y) = p(x) q(y|x). Used for utility accounting.
JointDistribution joint_from_marginal_channel(const Marginal& input,
                                              const Channel& channel);

// Shannon entropy in nats; 0 log 0 = 0.
double entropy(const std::vector<double>& probs);
inline double entropy(const Marginal& m) { return entropy(m.probs); }

// I(R;C) in nats for a validated joint.
double mutual_information(const JointDistribution& joint);

// I(R;C) / H(R), in [0, 1]. The joint's rows are the reference alphabet.
double normalized_mutual_information(const JointDistribution& joint);

// Deterministic seed derivation for per-trial streams.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

// Draws a joint uniformly from the probability simplex over rows x cols
// cells (flat Dirichlet), rejecting draws with any cell below
// kMinSampledCell. The same (rows, cols, seed) triple reproduces the same
// joint on every platform.
JointDistribution sample_random_joint(std::size_t rows, std::size_t cols,
                                      std::uint64_t seed);

// "s1", "s2", ... labels for generated alphabets.
std::vector<std::string> default_labels(const std::string& prefix,
                                        std::size_t count);

}  // namespace liftlab

#endif  // LIFTLAB_PROB_HPP_
