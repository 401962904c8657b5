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

#include "liftlab/random_response.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>
#include <unordered_set>

#include "simplex.hpp"

namespace liftlab {

namespace {

void check_subset_indices(const JointDistribution& joint,
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

// Gaussian elimination with partial pivoting; false on a singular system.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& out) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * out[c];
    out[r] = acc / a[r][r];
  }
  return true;
}

// C(m, k), or cap + 1 as soon as the count passes cap.
std::size_t combination_count(std::size_t m, std::size_t k, std::size_t cap) {
  if (k > m) return 0;
  const double log_count =
      std::lgamma(static_cast<double>(m) + 1.0) -
      std::lgamma(static_cast<double>(k) + 1.0) -
      std::lgamma(static_cast<double>(m - k) + 1.0);
  if (log_count > std::log(static_cast<double>(cap)) + 1e-9) return cap + 1;
  unsigned long long acc = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * (m - k + i) / i;
  }
  return static_cast<std::size_t>(acc);
}

struct Bounds {
  std::vector<double> lower;  // e^-eps_l P(r); empty when unconstrained
  std::vector<double> upper;  // e^eps_u P(r); empty when unconstrained
};

Bounds polytope_bounds(const LiftPolytope& poly) {
  Bounds b;
  if (!std::isinf(poly.budget.eps_l)) {
    b.lower.resize(poly.prior.size());
    for (std::size_t r = 0; r < poly.prior.size(); ++r) {
      b.lower[r] = std::exp(-poly.budget.eps_l) * poly.prior[r];
    }
  }
  if (!std::isinf(poly.budget.eps_u)) {
    b.upper.resize(poly.prior.size());
    for (std::size_t r = 0; r < poly.prior.size(); ++r) {
      b.upper[r] = std::exp(poly.budget.eps_u) * poly.prior[r];
    }
  }
  return b;
}

bool point_feasible(const LiftPolytope& poly, const Bounds& bounds,
                    const std::vector<double>& v) {
  for (double x : v) {
    if (x < -kVertexTol) return false;
  }
  for (std::size_t r = 0; r < poly.prior.size(); ++r) {
    double acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) acc += poly.cond(r, k) * v[k];
    if (!bounds.lower.empty() && acc < bounds.lower[r] - kVertexTol) {
      return false;
    }
    if (!bounds.upper.empty() && acc > bounds.upper[r] + kVertexTol) {
      return false;
    }
  }
  return true;
}

}  // namespace

LiftPolytope build_polytope(const JointDistribution& joint,
                            const std::vector<std::size_t>& subset,
                            const Budget& budget) {
  check_subset_indices(joint, subset);
  LiftPolytope poly;
  poly.subset = subset;
  poly.prior = joint.row_sums();
  poly.budget = budget;
  poly.cond = Mat(joint.num_rows(), subset.size(), 0.0);
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const double px = joint.col_sums()[subset[k]];
    for (std::size_t r = 0; r < joint.num_rows(); ++r) {
      poly.cond(r, k) = joint(r, subset[k]) / px;
    }
  }
  return poly;
}

std::vector<std::vector<double>> enumerate_vertices(const LiftPolytope& poly,
                                                    std::size_t basis_cap) {
  const std::size_t d = poly.dim();
  const std::size_t ns = poly.prior.size();
  const Bounds bounds = polytope_bounds(poly);

  // Inequality rows: one per coordinate sign constraint, then one per finite
  // lift bound. A vertex of the d-1 dimensional feasible set makes d-1 of
  // them tight on top of the simplex equality.
  enum class RowKind { kNonneg, kLower, kUpper };
  struct Row {
    RowKind kind;
    std::size_t index;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0; k < d; ++k) rows.push_back({RowKind::kNonneg, k});
  if (!bounds.lower.empty()) {
    for (std::size_t r = 0; r < ns; ++r) rows.push_back({RowKind::kLower, r});
  }
  if (!bounds.upper.empty()) {
    for (std::size_t r = 0; r < ns; ++r) rows.push_back({RowKind::kUpper, r});
  }

  const std::size_t pick = d - 1;
  if (combination_count(rows.size(), pick, basis_cap) > basis_cap) {
    throw Error(ErrorCode::kCapExceeded,
                "vertex enumeration would examine more than " +
                    std::to_string(basis_cap) + " candidate active sets");
  }

  std::vector<std::vector<double>> vertices;
  std::unordered_set<std::string> keys;
  auto try_candidate = [&](const std::vector<std::size_t>& chosen) {
    std::vector<std::vector<double>> a(d, std::vector<double>(d, 0.0));
    std::vector<double> b(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) a[0][k] = 1.0;
    b[0] = 1.0;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      const Row& row = rows[chosen[i]];
      switch (row.kind) {
        case RowKind::kNonneg:
          a[i + 1][row.index] = 1.0;
          b[i + 1] = 0.0;
          break;
        case RowKind::kLower:
          for (std::size_t k = 0; k < d; ++k) {
            a[i + 1][k] = poly.cond(row.index, k);
          }
          b[i + 1] = bounds.lower[row.index];
          break;
        case RowKind::kUpper:
          for (std::size_t k = 0; k < d; ++k) {
            a[i + 1][k] = poly.cond(row.index, k);
          }
          b[i + 1] = bounds.upper[row.index];
          break;
      }
    }
    std::vector<double> v;
    if (!solve_square(std::move(a), std::move(b), v)) return;
    if (!point_feasible(poly, bounds, v)) return;

    // Clean: clamp the solver's negative dust and renormalize.
    double total = 0.0;
    for (double& x : v) {
      if (x < 0.0) x = 0.0;
      total += x;
    }
    for (double& x : v) x /= total;

    std::string key;
    key.reserve(d * 12);
    for (double x : v) {
      key += std::to_string(static_cast<long long>(std::llround(x * 1e9)));
      key += ':';
    }
    if (keys.insert(key).second) vertices.push_back(std::move(v));
  };

  // All size-`pick` subsets of the inequality rows, via the usual
  // prev_permutation mask walk.
  std::vector<bool> mask(rows.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(pick),
            true);
  std::vector<std::size_t> chosen;
  do {
    chosen.clear();
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) chosen.push_back(i);
    }
    try_candidate(chosen);
  } while (std::prev_permutation(mask.begin(), mask.end()));

  if (vertices.empty()) {
    throw Error(ErrorCode::kEmptyPolytope,
                "no admissible posterior column exists for the subset");
  }
  std::sort(vertices.begin(), vertices.end());
  return vertices;
}

ColumnLp solve_column_lp(const std::vector<std::vector<double>>& vertices,
                         const std::vector<double>& target) {
  if (vertices.empty()) {
    throw Error(ErrorCode::kEmptyPolytope, "no vertices to weight");
  }
  const std::size_t d = target.size();
  const std::size_t m = vertices.size();
  Mat a(d, m, 0.0);
  std::vector<double> costs(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    if (vertices[k].size() != d) {
      throw Error(ErrorCode::kLabelMismatch,
                  "vertex dimension does not match target");
    }
    for (std::size_t r = 0; r < d; ++r) a(r, k) = vertices[k][r];
    costs[k] = entropy(vertices[k]);
  }

  const internal::LpResult lp = internal::solve_equality_lp(a, target, costs);
  if (lp.status != internal::LpStatus::kOptimal) {
    throw Error(ErrorCode::kInfeasibleTarget,
                "marginal is not representable by the admissible columns");
  }

  ColumnLp out;
  out.objective = lp.objective;
  std::vector<double> raw = lp.x;
  for (double& v : raw) {
    if (v < 0.0) v = 0.0;  // solver dust
  }

  auto collect = [&](double floor) {
    out.beta.assign(m, 0.0);
    out.support.clear();
    double kept = 0.0, total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      total += raw[k];
      if (raw[k] > floor) {
        out.support.push_back(k);
        out.beta[k] = raw[k];
        kept += raw[k];
      }
    }
    if (out.support.empty() || kept <= 0.0) return false;
    const double scale = total / kept;
    for (std::size_t k : out.support) out.beta[k] *= scale;
    for (std::size_t r = 0; r < d; ++r) {
      double acc = 0.0;
      for (std::size_t k : out.support) acc += a(r, k) * out.beta[k];
      if (std::abs(acc - target[r]) > kValidationTol) return false;
    }
    return true;
  };

  // Prune degenerate dust when doing so keeps the marginal intact; keep the
  // full support otherwise.
  if (!collect(kSupportTol) && !collect(0.0)) {
    throw Error(ErrorCode::kInfeasibleTarget, "weight program returned zero");
  }
  return out;
}

namespace {

std::vector<double> restricted_marginal(const JointDistribution& joint,
                                        const std::vector<std::size_t>& xs) {
  std::vector<double> t(xs.size(), 0.0);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    t[k] = joint.col_sums()[xs[k]];
  }
  return t;
}

SubsetResponse merge_point_response(const JointDistribution& joint,
                                    const std::vector<std::size_t>& xs) {
  SubsetResponse resp;
  resp.subset = xs;
  resp.merged_only = true;
  std::vector<double> column = restricted_marginal(joint, xs);
  double mass = 0.0;
  for (double v : column) mass += v;
  for (double& v : column) v /= mass;
  resp.columns.push_back(std::move(column));
  resp.out_probs.push_back(mass);
  return resp;
}

std::optional<SubsetResponse> try_solve_block(const JointDistribution& joint,
                                              const Budget& budget,
                                              const std::vector<std::size_t>& xs) {
  const LiftPolytope poly = build_polytope(joint, xs, budget);
  std::vector<std::vector<double>> verts;
  try {
    verts = enumerate_vertices(poly);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kEmptyPolytope) return std::nullopt;
    if (e.code() == ErrorCode::kCapExceeded) {
      // Too large to enumerate; the plain merge column still works whenever
      // the merged subset itself meets the lift budget.
      if (subset_meets_budget(joint, xs, MeasureKind::alip(), budget)) {
        return merge_point_response(joint, xs);
      }
      return std::nullopt;
    }
    throw;
  }
  try {
    const ColumnLp lp = solve_column_lp(verts, restricted_marginal(joint, xs));
    SubsetResponse resp;
    resp.subset = xs;
    for (std::size_t k : lp.support) {
      resp.columns.push_back(verts[k]);
      resp.out_probs.push_back(lp.beta[k]);
    }
    return resp;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInfeasibleTarget) return std::nullopt;
    throw;
  }
}

std::string join_subset_labels(const std::vector<std::string>& labels,
                               const std::vector<std::size_t>& subset) {
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i > 0) out += '+';
    out += labels[subset[i]];
  }
  return out;
}

// Channel from pass-through symbols plus solved response blocks.
Channel blocks_to_channel(const JointDistribution& joint,
                          const std::vector<std::size_t>& low,
                          const std::vector<SubsetResponse>& blocks) {
  const auto& labels = joint.col_labels();
  std::vector<std::size_t> sorted_low = low;
  std::sort(sorted_low.begin(), sorted_low.end());

  std::vector<std::string> out_labels;
  for (std::size_t x : sorted_low) out_labels.push_back(labels[x]);
  std::vector<std::size_t> offsets;
  for (const auto& block : blocks) {
    offsets.push_back(out_labels.size());
    const std::string base = join_subset_labels(labels, block.subset);
    if (block.columns.size() == 1) {
      out_labels.push_back(base);
    } else {
      for (std::size_t k = 1; k <= block.columns.size(); ++k) {
        out_labels.push_back(base + "#" + std::to_string(k));
      }
    }
  }

  Mat rows(labels.size(), out_labels.size(), 0.0);
  for (std::size_t i = 0; i < sorted_low.size(); ++i) {
    rows(sorted_low[i], i) = 1.0;
  }
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& block = blocks[bi];
    for (std::size_t k = 0; k < block.columns.size(); ++k) {
      for (std::size_t j = 0; j < block.subset.size(); ++j) {
        const std::size_t x = block.subset[j];
        // P(y|x) = P(x|y) q(y) / P(x).
        rows(x, offsets[bi] + k) = block.columns[k][j] * block.out_probs[k] /
                                   joint.col_sums()[x];
      }
    }
    // Dividing by a small P(x) amplifies weight-program dust; scrub the rows
    // back to exact distributions before validation.
    for (std::size_t x : block.subset) {
      double total = 0.0;
      for (std::size_t c = 0; c < rows.cols(); ++c) total += rows(x, c);
      for (std::size_t c = 0; c < rows.cols(); ++c) rows(x, c) /= total;
    }
  }
  return Channel::validate(std::move(rows), labels, std::move(out_labels));
}

}  // namespace

MechanismReport optimal_response(const JointDistribution& joint,
                                 const Budget& budget,
                                 std::size_t alphabet_cap) {
  if (joint.num_cols() > alphabet_cap) {
    throw Error(ErrorCode::kCapExceeded,
                "alphabet size " + std::to_string(joint.num_cols()) +
                    " exceeds the cap " + std::to_string(alphabet_cap));
  }
  if (budget.is_unbounded()) {
    return identity_mechanism(joint, MeasureKind::alip(), budget);
  }

  std::vector<std::size_t> all(joint.num_cols());
  std::iota(all.begin(), all.end(), 0);
  const LiftPolytope poly = build_polytope(joint, all, budget);
  const auto verts = enumerate_vertices(poly);
  const ColumnLp lp = solve_column_lp(verts, joint.col_sums());

  SubsetResponse block;
  block.subset = all;
  for (std::size_t k : lp.support) {
    block.columns.push_back(verts[k]);
    block.out_probs.push_back(lp.beta[k]);
  }
  Channel channel = blocks_to_channel(joint, {}, {block});

  Partition part;
  part.groups.push_back(std::move(all));
  return assemble_report(joint, MeasureKind::alip(), budget, std::move(part),
                         std::move(channel));
}

SubsetResponseResult subset_response_detailed(const JointDistribution& joint,
                                              const MeasureKind& kind,
                                              const Budget& budget) {
  SubsetResponseResult result;
  Partition part = subset_merging(joint, kind, budget);
  if (part.groups.empty()) {
    result.report = identity_mechanism(joint, kind, budget);
    return result;
  }

  std::deque<std::vector<std::size_t>> pending(part.groups.begin(),
                                               part.groups.end());
  std::vector<SubsetResponse> accepted;
  bool exhausted = false;
  while (!pending.empty()) {
    std::vector<std::size_t> cur = std::move(pending.front());
    pending.pop_front();
    while (true) {
      auto block = try_solve_block(joint, budget, cur);
      if (block.has_value()) {
        accepted.push_back(std::move(*block));
        break;
      }
      // No admissible columns: widen the block with the next group, then
      // with previously accepted ones, before giving up entirely.
      std::vector<std::size_t> extra;
      if (!pending.empty()) {
        extra = std::move(pending.front());
        pending.pop_front();
      } else if (!accepted.empty()) {
        extra = std::move(accepted.back().subset);
        accepted.pop_back();
      } else {
        exhausted = true;
        break;
      }
      cur.insert(cur.end(), extra.begin(), extra.end());
      std::sort(cur.begin(), cur.end());
    }
    if (exhausted) break;
  }

  if (exhausted) {
    result.report = subset_merge_mechanism(joint, kind, budget);
    result.fell_back = true;
    return result;
  }

  Channel channel = blocks_to_channel(joint, part.low, accepted);
  Partition solved;
  solved.low = part.low;
  for (const auto& block : accepted) {
    result.subsets.push_back(block.subset);
    solved.groups.push_back(block.subset);
  }
  result.report = assemble_report(joint, kind, budget, std::move(solved),
                                  std::move(channel));
  return result;
}

MechanismReport subset_response_mechanism(const JointDistribution& joint,
                                          const MeasureKind& kind,
                                          const Budget& budget) {
  return subset_response_detailed(joint, kind, budget).report;
}

}  // namespace liftlab
