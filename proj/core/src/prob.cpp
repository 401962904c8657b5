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

#include "liftlab/prob.hpp"

#include <cmath>
#include <random>
#include <set>
#include <utility>

namespace liftlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeEntry:
      return "NegativeEntry";
    case ErrorCode::kSumOutOfTolerance:
      return "SumOutOfTolerance";
    case ErrorCode::kEmptySupport:
      return "EmptySupport";
    case ErrorCode::kLabelMismatch:
      return "LabelMismatch";
    case ErrorCode::kAlphaOutOfRange:
      return "AlphaOutOfRange";
    case ErrorCode::kZeroLift:
      return "ZeroLift";
    case ErrorCode::kEmptySubset:
      return "EmptySubset";
    case ErrorCode::kMalformedR:
      return "MalformedR";
    case ErrorCode::kEmptyPolytope:
      return "EmptyPolytope";
    case ErrorCode::kInfeasibleTarget:
      return "InfeasibleTarget";
    case ErrorCode::kCapExceeded:
      return "CapExceeded";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "UnknownError";
}

namespace {

void check_labels(const std::vector<std::string>& labels, std::size_t expected,
                  const char* axis) {
  if (labels.size() != expected) {
    throw Error(ErrorCode::kLabelMismatch,
                std::string(axis) + " label count " +
                    std::to_string(labels.size()) + " does not match size " +
                    std::to_string(expected));
  }
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw Error(ErrorCode::kLabelMismatch,
                std::string(axis) + " labels contain duplicates");
  }
}

void check_entries(const Mat& table) {
  for (double v : table.data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNegativeEntry, "entry is not finite");
    }
    if (v < 0.0) {
      throw Error(ErrorCode::kNegativeEntry,
                  "entry " + std::to_string(v) + " is negative");
    }
  }
}

}  // namespace

JointDistribution JointDistribution::validate(
    Mat table, std::vector<std::string> row_labels,
    std::vector<std::string> col_labels) {
  if (table.rows() == 0 || table.cols() == 0) {
    throw Error(ErrorCode::kEmptySupport, "joint table has no cells");
  }
  check_labels(row_labels, table.rows(), "row");
  check_labels(col_labels, table.cols(), "column");
  check_entries(table);

  double total = 0.0;
  for (double v : table.data()) total += v;
  if (std::abs(total - 1.0) > kValidationTol) {
    throw Error(ErrorCode::kSumOutOfTolerance,
                "joint total " + std::to_string(total) +
                    " differs from 1 by more than 1e-9");
  }
  for (double& v : table.data()) v /= total;

  JointDistribution j;
  j.probs_ = std::move(table);
  j.row_labels_ = std::move(row_labels);
  j.col_labels_ = std::move(col_labels);
  j.row_sums_.assign(j.probs_.rows(), 0.0);
  j.col_sums_.assign(j.probs_.cols(), 0.0);
  for (std::size_t r = 0; r < j.probs_.rows(); ++r) {
    for (std::size_t c = 0; c < j.probs_.cols(); ++c) {
      j.row_sums_[r] += j.probs_(r, c);
      j.col_sums_[c] += j.probs_(r, c);
    }
  }
  for (std::size_t r = 0; r < j.row_sums_.size(); ++r) {
    if (j.row_sums_[r] <= 0.0) {
      throw Error(ErrorCode::kEmptySupport,
                  "row " + j.row_labels_[r] + " has zero probability");
    }
  }
  for (std::size_t c = 0; c < j.col_sums_.size(); ++c) {
    if (j.col_sums_[c] <= 0.0) {
      throw Error(ErrorCode::kEmptySupport,
                  "column " + j.col_labels_[c] + " has zero probability");
    }
  }
  return j;
}

Channel Channel::validate(Mat rows, std::vector<std::string> in_labels,
                          std::vector<std::string> out_labels) {
  if (rows.rows() == 0 || rows.cols() == 0) {
    throw Error(ErrorCode::kEmptySupport, "channel table has no cells");
  }
  check_labels(in_labels, rows.rows(), "input");
  check_labels(out_labels, rows.cols(), "output");
  check_entries(rows);

  for (std::size_t x = 0; x < rows.rows(); ++x) {
    double total = 0.0;
    for (std::size_t y = 0; y < rows.cols(); ++y) total += rows(x, y);
    if (std::abs(total - 1.0) > kValidationTol) {
      throw Error(ErrorCode::kSumOutOfTolerance,
                  "channel row " + in_labels[x] + " sums to " +
                      std::to_string(total));
    }
    for (std::size_t y = 0; y < rows.cols(); ++y) rows(x, y) /= total;
  }

  Channel c;
  c.rows_ = std::move(rows);
  c.in_labels_ = std::move(in_labels);
  c.out_labels_ = std::move(out_labels);
  return c;
}

Channel Channel::identity(std::vector<std::string> labels) {
  Mat rows(labels.size(), labels.size(), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) rows(i, i) = 1.0;
  return validate(std::move(rows), labels, labels);
}

JointDistribution compose_channel(const JointDistribution& joint,
                                  const Channel& channel) {
  if (joint.col_labels() != channel.in_labels()) {
    throw Error(ErrorCode::kLabelMismatch,
                "channel inputs do not match joint columns");
  }
  const std::size_t nr = joint.num_rows();
  const std::size_t nc = joint.num_cols();
  const std::size_t ny = channel.num_outputs();

  Mat out(nr, ny, 0.0);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      const double p = joint(r, c);
      if (p == 0.0) continue;
      for (std::size_t y = 0; y < ny; ++y) {
        const double q = channel(c, y);
        if (q != 0.0) out(r, y) += p * q;
      }
    }
  }

  // Outputs the channel never emits (for inputs with mass) are dropped so the
  // composed joint keeps full support.
  std::vector<std::size_t> keep;
  for (std::size_t y = 0; y < ny; ++y) {
    double col = 0.0;
    for (std::size_t r = 0; r < nr; ++r) col += out(r, y);
    if (col > 0.0) keep.push_back(y);
  }
  Mat pruned(nr, keep.size(), 0.0);
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    for (std::size_t r = 0; r < nr; ++r) pruned(r, k) = out(r, keep[k]);
    labels.push_back(channel.out_labels()[keep[k]]);
  }
  return JointDistribution::validate(std::move(pruned), joint.row_labels(),
                                     std::move(labels));
}

JointDistribution joint_from_marginal_channel(const Marginal& input,
                                              const Channel& channel) {
  if (input.labels != channel.in_labels()) {
    throw Error(ErrorCode::kLabelMismatch,
                "channel inputs do not match marginal labels");
  }
  Mat table(input.probs.size(), channel.num_outputs(), 0.0);
  for (std::size_t x = 0; x < input.probs.size(); ++x) {
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      table(x, y) = input.probs[x] * channel(x, y);
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
    double col = 0.0;
    for (std::size_t x = 0; x < input.probs.size(); ++x) col += table(x, y);
    if (col > 0.0) keep.push_back(y);
  }
  Mat pruned(input.probs.size(), keep.size(), 0.0);
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    for (std::size_t x = 0; x < input.probs.size(); ++x) {
      pruned(x, k) = table(x, keep[k]);
    }
    labels.push_back(channel.out_labels()[keep[k]]);
  }
  return JointDistribution::validate(std::move(pruned), input.labels,
                                     std::move(labels));
}

double entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double mutual_information(const JointDistribution& joint) {
  double mi = 0.0;
  for (std::size_t r = 0; r < joint.num_rows(); ++r) {
    for (std::size_t c = 0; c < joint.num_cols(); ++c) {
      const double p = joint(r, c);
      if (p > 0.0) {
        mi += p * std::log(p / (joint.row_sums()[r] * joint.col_sums()[c]));
      }
    }
  }
  return mi;
}

double normalized_mutual_information(const JointDistribution& joint) {
  return mutual_information(joint) / entropy(joint.row_sums());
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  auto split = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return split(base ^ split(index + 1));
}

JointDistribution sample_random_joint(std::size_t rows, std::size_t cols,
                                      std::uint64_t seed) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kEmptySupport, "requested an empty alphabet");
  }
  // mt19937_64 output is pinned by the standard, and the exponential draws
  // below use an explicit inverse CDF, so results are platform independent.
  std::mt19937_64 gen(mix_seed(seed, 0));
  auto uniform = [&gen]() {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };

  Mat table(rows, cols, 0.0);
  while (true) {
    double total = 0.0;
    for (double& v : table.data()) {
      v = -std::log1p(-uniform());
      total += v;
    }
    bool ok = total > 0.0;
    if (ok) {
      for (double& v : table.data()) {
        v /= total;
        if (v < kMinSampledCell) {
          ok = false;
          break;
        }
      }
    }
    if (ok) break;
  }
  return JointDistribution::validate(std::move(table),
                                     default_labels("s", rows),
                                     default_labels("x", cols));
}

std::vector<std::string> default_labels(const std::string& prefix,
                                        std::size_t count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    labels.push_back(prefix + std::to_string(i));
  }
  return labels;
}

}  // namespace liftlab
