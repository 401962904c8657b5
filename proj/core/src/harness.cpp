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

#include "liftlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "liftlab/csv.hpp"

namespace liftlab {

namespace {

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  }
  out << text;
  if (!out) {
    throw Error(ErrorCode::kIoError, "failed writing " + path);
  }
}

void validate_sweep_options(const SweepOptions& options) {
  if (options.eps_values.empty()) {
    throw Error(ErrorCode::kParseError, "sweep needs a nonempty eps grid");
  }
  for (double e : options.eps_values) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw Error(ErrorCode::kParseError, "eps grid values must be finite and nonnegative");
    }
  }
  if (options.lambdas.empty()) {
    throw Error(ErrorCode::kParseError, "sweep needs at least one lambda");
  }
  for (double l : options.lambdas) {
    if (!(l > 0.0) || !(l < 1.0)) {
      throw Error(ErrorCode::kParseError,
                  "lambda must lie strictly between 0 and 1");
    }
  }
  if (options.mechanisms.empty()) {
    throw Error(ErrorCode::kParseError, "sweep needs at least one mechanism");
  }
  if (options.trials < 1) {
    throw Error(ErrorCode::kParseError, "sweep needs at least one trial");
  }
  if (!options.joint_override &&
      (options.num_secrets < 1 || options.num_symbols < 1)) {
    throw Error(ErrorCode::kParseError, "alphabet sizes must be at least 1");
  }
  if (options.kind.tag == MeasureTag::kAlphaLift) {
    if (options.alphas.empty()) {
      throw Error(ErrorCode::kParseError,
                  "the alpha-lift kind needs at least one alpha");
    }
    for (double a : options.alphas) {
      if (!(a > 1.0) || !std::isfinite(a)) {
        throw Error(ErrorCode::kParseError, "alpha must be finite and above 1");
      }
    }
  }
}

struct TrialOutcome {
  double nmi = 0.0;
  double max_leak = 0.0;
  double min_leak = 0.0;
  double seconds = 0.0;
  std::string error;  // nonempty when the trial failed
};

std::string join_group(const std::vector<std::string>& labels,
                       const std::vector<std::size_t>& group) {
  std::string out;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (i > 0) out += '+';
    out += labels[group[i]];
  }
  return out;
}

}  // namespace

const char* mechanism_name(MechanismId id) {
  switch (id) {
    case MechanismId::kWatchdogComplete:
      return "watchdog-complete";
    case MechanismId::kWatchdogSubset:
      return "watchdog-subset";
    case MechanismId::kOptimalResponse:
      return "aorr";
    case MechanismId::kSubsetResponse:
      return "srr";
  }
  return "?";
}

MechanismId mechanism_from_name(const std::string& name) {
  if (name == "watchdog-complete") return MechanismId::kWatchdogComplete;
  if (name == "watchdog-subset") return MechanismId::kWatchdogSubset;
  if (name == "aorr") return MechanismId::kOptimalResponse;
  if (name == "srr") return MechanismId::kSubsetResponse;
  throw Error(ErrorCode::kParseError, "unknown mechanism '" + name +
                                          "' (expected watchdog-complete, "
                                          "watchdog-subset, aorr or srr)");
}

MechanismReport run_mechanism(MechanismId id, const JointDistribution& joint,
                              const MeasureKind& kind, const Budget& budget,
                              std::size_t alphabet_cap) {
  switch (id) {
    case MechanismId::kWatchdogComplete:
      return complete_merge_mechanism(joint, kind, budget);
    case MechanismId::kWatchdogSubset:
      return subset_merge_mechanism(joint, kind, budget);
    case MechanismId::kOptimalResponse:
      return optimal_response(joint, budget, alphabet_cap);
    case MechanismId::kSubsetResponse:
      return subset_response_mechanism(joint, kind, budget);
  }
  throw Error(ErrorCode::kParseError, "unknown mechanism id");
}

SweepResult run_sweep(const SweepOptions& options) {
  validate_sweep_options(options);

  const std::size_t trials = options.trials;
  std::vector<JointDistribution> sampled;
  if (!options.joint_override) {
    sampled.resize(trials);
    for (std::size_t i = 0; i < trials; ++i) {
      sampled[i] = sample_random_joint(options.num_secrets,
                                       options.num_symbols,
                                       mix_seed(options.seed, i));
    }
  }
  auto trial_joint = [&](std::size_t i) -> const JointDistribution& {
    return options.joint_override ? *options.joint_override : sampled[i];
  };
  const std::size_t alphabet = trial_joint(0).num_cols();

  std::size_t workers =
      options.threads ? options.threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min(workers, trials);

  // The alpha axis only exists for the order-parameterized kind; other kinds
  // get one pass with a placeholder.
  const bool has_alpha = options.kind.tag == MeasureTag::kAlphaLift;
  const std::vector<double> alphas =
      has_alpha ? options.alphas : std::vector<double>{0.0};

  SweepResult result;
  std::vector<TrialOutcome> outcomes(trials);

  for (MechanismId mech : options.mechanisms) {
    for (double lambda : options.lambdas) {
      for (double alpha : alphas) {
        const MeasureKind kind =
            has_alpha ? MeasureKind::alpha_lift(alpha) : options.kind;
        for (double eps : options.eps_values) {
          ++result.total_cells;
          auto cell_tag = [&] {
            std::string tag = "mechanism=";
            tag += mechanism_name(mech);
            tag += " kind=" + std::string(kind.name());
            tag += " eps=" + format_double(eps);
            tag += " lambda=" + format_double(lambda);
            if (has_alpha) tag += " alpha=" + format_double(alpha);
            return tag;
          };
          if (mech == MechanismId::kOptimalResponse &&
              alphabet > options.alphabet_cap) {
            result.diagnostics.push_back(
                cell_tag() + ": skipped, alphabet size " +
                std::to_string(alphabet) + " exceeds the cap " +
                std::to_string(options.alphabet_cap));
            continue;
          }

          const Budget budget = options.kind.tag == MeasureTag::kLip
                                    ? Budget::split(eps, 0.5)
                                    : Budget::split(eps, lambda);

          std::atomic<std::size_t> next{0};
          auto work = [&] {
            while (true) {
              const std::size_t i = next.fetch_add(1);
              if (i >= trials) break;
              TrialOutcome& slot = outcomes[i];
              slot = TrialOutcome{};
              try {
                const auto start = std::chrono::steady_clock::now();
                const MechanismReport report = run_mechanism(
                    mech, trial_joint(i), kind, budget, options.alphabet_cap);
                if (options.measure_time) {
                  slot.seconds = std::chrono::duration<double>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
                }
                slot.nmi = report.nmi;
                slot.max_leak = report.max_lift_leak;
                slot.min_leak = report.min_lift_leak;
              } catch (const std::exception& e) {
                slot.error = e.what();
                if (slot.error.empty()) slot.error = "unknown failure";
              }
            }
          };
          if (workers == 1) {
            work();
          } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
            for (auto& t : pool) t.join();
          }

          // Deterministic reduction in trial order; any failed trial drops
          // the whole cell.
          SweepRecord rec;
          rec.eps = eps;
          rec.lambda = lambda;
          rec.mechanism = mechanism_name(mech);
          rec.kind = kind.name();
          rec.alpha = has_alpha ? alpha : 0.0;
          rec.trials = trials;
          bool failed = false;
          for (std::size_t i = 0; i < trials && !failed; ++i) {
            const TrialOutcome& slot = outcomes[i];
            if (!slot.error.empty()) {
              result.diagnostics.push_back(cell_tag() + ": trial " +
                                           std::to_string(i) +
                                           " failed: " + slot.error);
              failed = true;
              break;
            }
            rec.mean_nmi += slot.nmi;
            rec.mean_max_lift_leak += slot.max_leak;
            rec.mean_min_lift_leak += slot.min_leak;
            rec.mean_wall_time_s += slot.seconds;
          }
          if (failed) continue;
          const double n = static_cast<double>(trials);
          rec.mean_nmi /= n;
          rec.mean_max_lift_leak /= n;
          rec.mean_min_lift_leak /= n;
          rec.mean_wall_time_s /= n;
          result.records.push_back(std::move(rec));
        }
      }
    }
  }
  return result;
}

std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << "eps,lambda,mechanism,kind,alpha,mean_nmi,mean_max_lift_leak,"
         "mean_min_lift_leak,mean_wall_time_s,trials\n";
  for (const SweepRecord& r : records) {
    out << format_double(r.eps) << ',' << format_double(r.lambda) << ','
        << r.mechanism << ',' << r.kind << ',' << format_double(r.alpha) << ','
        << format_double(r.mean_nmi) << ','
        << format_double(r.mean_max_lift_leak) << ','
        << format_double(r.mean_min_lift_leak) << ','
        << format_double(r.mean_wall_time_s) << ',' << r.trials << '\n';
  }
  return out.str();
}

void sweep_to_csv_file(const std::vector<SweepRecord>& records,
                       const std::string& path) {
  write_text_file(path, sweep_to_csv(records));
}

LiftHistogram lift_histogram(const HistogramOptions& options) {
  if (options.trials < 1 || options.bins < 1) {
    throw Error(ErrorCode::kParseError, "histogram needs trials and bins >= 1");
  }
  if (!options.joint_override &&
      (options.num_secrets < 1 || options.num_symbols < 1)) {
    throw Error(ErrorCode::kParseError, "alphabet sizes must be at least 1");
  }

  std::vector<double> min_logs, max_logs;
  for (std::size_t i = 0; i < options.trials; ++i) {
    const JointDistribution joint =
        options.joint_override
            ? *options.joint_override
            : sample_random_joint(options.num_secrets, options.num_symbols,
                                  mix_seed(options.seed, i));
    const LiftTable table = lift_table(joint);
    for (std::size_t c = 0; c < table.num_outputs(); ++c) {
      min_logs.push_back(std::log(table.min_lift[c]));
      max_logs.push_back(std::log(table.max_lift[c]));
    }
  }

  LiftHistogram hist;
  double lo = min_logs[0], hi = min_logs[0];
  for (double v : min_logs) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : max_logs) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  hist.lo = lo;
  hist.hi = hi;
  hist.bin_width = (hi - lo) / static_cast<double>(options.bins);
  hist.bin_centers.resize(options.bins);
  for (std::size_t b = 0; b < options.bins; ++b) {
    hist.bin_centers[b] = lo + (static_cast<double>(b) + 0.5) * hist.bin_width;
  }
  auto densify = [&](const std::vector<double>& values) {
    std::vector<double> density(options.bins, 0.0);
    for (double v : values) {
      auto b = static_cast<std::size_t>((v - lo) / hist.bin_width);
      if (b >= options.bins) b = options.bins - 1;
      density[b] += 1.0;
    }
    const double norm = static_cast<double>(values.size()) * hist.bin_width;
    for (double& d : density) d /= norm;
    return density;
  };
  hist.min_lift_density = densify(min_logs);
  hist.max_lift_density = densify(max_logs);
  return hist;
}

std::string histogram_to_csv(const LiftHistogram& hist) {
  std::ostringstream out;
  out << "bin_center,min_lift_density,max_lift_density\n";
  for (std::size_t b = 0; b < hist.bin_centers.size(); ++b) {
    out << format_double(hist.bin_centers[b]) << ','
        << format_double(hist.min_lift_density[b]) << ','
        << format_double(hist.max_lift_density[b]) << '\n';
  }
  return out.str();
}

void histogram_to_csv_file(const LiftHistogram& hist, const std::string& path) {
  write_text_file(path, histogram_to_csv(hist));
}

MechanismReport analyze_joint(const JointDistribution& joint,
                              const AnalyzeRequest& request) {
  return run_mechanism(request.mechanism, joint, request.kind, request.budget,
                       request.alphabet_cap);
}

std::string report_to_text(const MechanismReport& report) {
  std::ostringstream out;
  const auto& labels = report.channel.in_labels();
  out << "satisfied: " << (report.satisfied ? "true" : "false") << '\n';
  out << "utility_mi: " << format_double(report.utility_mi) << '\n';
  out << "nmi: " << format_double(report.nmi) << '\n';
  out << "max_lift_leak: " << format_double(report.max_lift_leak) << '\n';
  out << "min_lift_leak: " << format_double(report.min_lift_leak) << '\n';
  out << "outputs: " << report.channel.num_outputs() << '\n';
  out << "passthrough: "
      << (report.partition.low.empty()
              ? std::string("-")
              : join_group(labels, report.partition.low))
      << '\n';
  for (std::size_t g = 0; g < report.partition.groups.size(); ++g) {
    out << "group_" << (g + 1) << ": "
        << join_group(labels, report.partition.groups[g]) << '\n';
  }
  if (!report.satisfied) {
    out << "residual_eps_l: " << format_double(report.residual_eps_l) << '\n';
    out << "residual_eps_u: " << format_double(report.residual_eps_u) << '\n';
  }
  return out.str();
}

}  // namespace liftlab
