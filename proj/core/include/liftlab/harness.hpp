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

#ifndef LIFTLAB_HARNESS_HPP_
#define LIFTLAB_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "liftlab/random_response.hpp"

namespace liftlab {

enum class MechanismId {
  kWatchdogComplete,
  kWatchdogSubset,
  kOptimalResponse,  // CLI name "aorr"
  kSubsetResponse,   // CLI name "srr"
};

// "watchdog-complete", "watchdog-subset", "aorr", "srr".
const char* mechanism_name(MechanismId id);
MechanismId mechanism_from_name(const std::string& name);

// Single dispatch point shared by sweeps, analysis and tests.
MechanismReport run_mechanism(MechanismId id, const JointDistribution& joint,
                              const MeasureKind& kind, const Budget& budget,
                              std::size_t alphabet_cap = kDefaultAlphabetCap);

// One Monte-Carlo experiment: a grid of (eps, lambda, mechanism[, alpha])
// cells, each evaluated on the same `trials` sampled joints.
struct SweepOptions {
  std::size_t num_secrets = 5;
  std::size_t num_symbols = 17;
  std::size_t trials = 10;
  std::vector<double> eps_values;          // grid in nats, nonempty
  std::vector<double> lambdas = {0.5};     // each strictly inside (0, 1)
  std::vector<MechanismId> mechanisms;     // nonempty
  MeasureKind kind = MeasureKind::alip();
  std::vector<double> alphas = {2.0};      // used only for the alpha-lift kind
  std::uint64_t seed = 1;
  std::size_t threads = 0;                 // 0 = hardware concurrency
  bool measure_time = true;                // false writes 0 for wall time,
                                           // making the CSV reproducible
  std::size_t alphabet_cap = kDefaultAlphabetCap;

  // When set, every trial evaluates this joint instead of a sampled one.
  std::optional<JointDistribution> joint_override;
};

struct SweepRecord {
  double eps = 0.0;
  double lambda = 0.0;
  std::string mechanism;
  std::string kind;
  double alpha = 0.0;  // 0 when the kind does not take an order
  double mean_nmi = 0.0;
  double mean_max_lift_leak = 0.0;
  double mean_min_lift_leak = 0.0;
  double mean_wall_time_s = 0.0;
  std::size_t trials = 0;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<std::string> diagnostics;  // one line per skipped cell
  std::size_t total_cells = 0;

  bool all_skipped() const { return total_cells > 0 && records.empty(); }
};

// Evaluates every grid cell over the shared trial joints. Trial i always
// draws from seed mix_seed(options.seed, i), so results do not depend on the
// grid shape or the thread count. A cell whose synthesis throws is dropped
// with a diagnostic; the sweep itself keeps going.
SweepResult run_sweep(const SweepOptions& options);

std::string sweep_to_csv(const std::vector<SweepRecord>& records);
void sweep_to_csv_file(const std::vector<SweepRecord>& records,
                       const std::string& path);

// Pooled distribution of per-output log min-lift and log max-lift over
// sampled joints, binned on a common grid.
struct HistogramOptions {
  std::size_t num_secrets = 5;
  std::size_t num_symbols = 17;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t bins = 64;

  std::optional<JointDistribution> joint_override;
};

struct LiftHistogram {
  std::vector<double> bin_centers;
  std::vector<double> min_lift_density;  // log min-lift, integrates to 1
  std::vector<double> max_lift_density;  // log max-lift, integrates to 1
  double lo = 0.0;
  double hi = 0.0;
  double bin_width = 0.0;
};

LiftHistogram lift_histogram(const HistogramOptions& options);

std::string histogram_to_csv(const LiftHistogram& hist);
void histogram_to_csv_file(const LiftHistogram& hist, const std::string& path);

// Single-instance synthesis for the analyze command.
struct AnalyzeRequest {
  MeasureKind kind = MeasureKind::alip();
  Budget budget = Budget::unbounded();
  MechanismId mechanism = MechanismId::kWatchdogSubset;
  std::size_t alphabet_cap = kDefaultAlphabetCap;
};

MechanismReport analyze_joint(const JointDistribution& joint,
                              const AnalyzeRequest& request);

// Key-value rendering of a report, one "key: value" line each.
std::string report_to_text(const MechanismReport& report);

}  // namespace liftlab

#endif  // LIFTLAB_HARNESS_HPP_
