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

// Command line front end: Monte-Carlo sweeps over privatization mechanisms,
// log-lift histograms, and single-distribution analysis.
//
// Exit codes: 0 success, 2 validation or usage error, 3 when a sweep skipped
// every cell or an analyzed mechanism missed its budget.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liftlab/csv.hpp"
#include "liftlab/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

// "start:stop:step" inclusive of both ends, or a single number.
std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  if (first == std::string::npos) {
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v};
    } catch (const std::exception&) {
      throw liftlab::Error(liftlab::ErrorCode::kParseError,
                           "bad eps value '" + text + "'");
    }
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw liftlab::Error(liftlab::ErrorCode::kParseError,
                         "eps grid must look like start:stop:step");
  }
  double start = 0.0, stop = 0.0, step = 0.0;
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, first);
    const std::string b = text.substr(first + 1, second - first - 1);
    const std::string c = text.substr(second + 1);
    start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    stop = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    step = std::stod(c, &used);
    if (used != c.size()) throw std::invalid_argument(c);
  } catch (const std::exception&) {
    throw liftlab::Error(liftlab::ErrorCode::kParseError,
                         "bad eps grid '" + text + "'");
  }
  if (!(step > 0.0) || stop < start) {
    throw liftlab::Error(liftlab::ErrorCode::kParseError,
                         "eps grid needs step > 0 and stop >= start");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = start + static_cast<double>(i) * step;
  }
  return values;
}

struct SweepArgs {
  std::size_t ns = 5;
  std::size_t nx = 17;
  std::size_t trials = 10;
  std::string eps_grid;
  std::vector<double> lambdas = {0.5};
  std::string mechanism;
  std::string kind = "alip";
  std::vector<double> alphas = {2.0};
  std::uint64_t seed = 1;
  std::string out;
  std::string joint_file;
  std::size_t threads = 0;
  bool no_timing = false;
};

int cmd_sweep(const SweepArgs& args) {
  liftlab::SweepOptions options;
  options.num_secrets = args.ns;
  options.num_symbols = args.nx;
  options.trials = args.trials;
  options.eps_values = parse_grid(args.eps_grid);
  options.lambdas = args.lambdas;
  options.mechanisms = {liftlab::mechanism_from_name(args.mechanism)};
  options.kind = liftlab::measure_kind_from_name(args.kind, 2.0);
  options.alphas = args.alphas;
  options.seed = args.seed;
  options.threads = args.threads;
  options.measure_time = !args.no_timing;
  if (!args.joint_file.empty()) {
    options.joint_override = liftlab::joint_from_csv_file(args.joint_file);
  }

  const liftlab::SweepResult result = liftlab::run_sweep(options);
  for (const std::string& line : result.diagnostics) {
    std::cerr << line << '\n';
  }
  liftlab::sweep_to_csv_file(result.records, args.out);
  if (result.all_skipped()) {
    std::cerr << "every cell was skipped, nothing to aggregate\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

struct HistArgs {
  std::size_t ns = 5;
  std::size_t nx = 17;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t bins = 64;
  std::string out;
};

int cmd_hist(const HistArgs& args) {
  liftlab::HistogramOptions options;
  options.num_secrets = args.ns;
  options.num_symbols = args.nx;
  options.trials = args.trials;
  options.seed = args.seed;
  options.bins = args.bins;
  liftlab::histogram_to_csv_file(liftlab::lift_histogram(options), args.out);
  return kExitOk;
}

struct AnalyzeArgs {
  std::string joint_file;
  std::string kind = "alip";
  double alpha = 2.0;
  double eps_l = std::numeric_limits<double>::infinity();
  double eps_u = std::numeric_limits<double>::infinity();
  std::string mechanism = "watchdog-subset";
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const liftlab::JointDistribution joint =
      liftlab::joint_from_csv_file(args.joint_file);
  liftlab::AnalyzeRequest request;
  request.kind = liftlab::measure_kind_from_name(args.kind, args.alpha);
  request.budget.eps_l = args.eps_l;
  request.budget.eps_u = args.eps_u;
  request.mechanism = liftlab::mechanism_from_name(args.mechanism);

  const liftlab::MechanismReport report = liftlab::analyze_joint(joint, request);
  std::cout << liftlab::report_to_text(report);
  if (!args.out.empty()) {
    liftlab::channel_to_csv_file(report.channel, args.out);
  }
  return report.satisfied ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lift-based privacy leakage statistics and channel synthesis"};
  app.require_subcommand(1);

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Aggregate mechanism quality over sampled joints");
  sweep_cmd->add_option("--ns", sweep.ns, "Number of secret symbols");
  sweep_cmd->add_option("--nx", sweep.nx, "Number of data symbols");
  sweep_cmd->add_option("--trials", sweep.trials, "Joints per grid cell");
  sweep_cmd->add_option("--eps", sweep.eps_grid,
                        "Budget grid, start:stop:step or a single value")
      ->required();
  sweep_cmd->add_option("--lambda", sweep.lambdas,
                        "Budget split fractions in (0,1)")
      ->delimiter(',');
  sweep_cmd->add_option("--mechanism", sweep.mechanism,
                        "watchdog-complete, watchdog-subset, aorr or srr")
      ->required();
  sweep_cmd->add_option("--kind", sweep.kind,
                        "alip, ldp, lip, ell1, chi2 or alpha-lift");
  sweep_cmd->add_option("--alpha", sweep.alphas,
                        "Orders for the alpha-lift kind")
      ->delimiter(',');
  sweep_cmd->add_option("--seed", sweep.seed, "Base RNG seed");
  sweep_cmd->add_option("--out", sweep.out, "Output CSV path")->required();
  sweep_cmd->add_option("--joint", sweep.joint_file,
                        "Evaluate this joint CSV instead of sampling");
  sweep_cmd->add_option("--threads", sweep.threads,
                        "Worker threads (0 = all cores)");
  sweep_cmd->add_flag("--no-timing", sweep.no_timing,
                      "Write 0 for wall time so the CSV is reproducible");

  HistArgs hist;
  CLI::App* hist_cmd = app.add_subcommand(
      "hist", "Histogram of per-output log min/max lift over sampled joints");
  hist_cmd->add_option("--ns", hist.ns, "Number of secret symbols");
  hist_cmd->add_option("--nx", hist.nx, "Number of data symbols");
  hist_cmd->add_option("--trials", hist.trials, "Number of sampled joints");
  hist_cmd->add_option("--seed", hist.seed, "Base RNG seed");
  hist_cmd->add_option("--bins", hist.bins, "Number of histogram bins");
  hist_cmd->add_option("--out", hist.out, "Output CSV path")->required();

  AnalyzeArgs analyze;
  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Synthesize a channel for one joint distribution");
  analyze_cmd->add_option("joint", analyze.joint_file, "Joint CSV file")
      ->required();
  analyze_cmd->add_option("--kind", analyze.kind,
                          "alip, ldp, lip, ell1, chi2 or alpha-lift");
  analyze_cmd->add_option("--alpha", analyze.alpha,
                          "Order for the alpha-lift kind");
  analyze_cmd->add_option("--eps-l", analyze.eps_l,
                          "Lower budget in nats (default unbounded)");
  analyze_cmd->add_option("--eps-u", analyze.eps_u,
                          "Upper budget in nats (default unbounded)");
  analyze_cmd->add_option("--mechanism", analyze.mechanism,
                          "watchdog-complete, watchdog-subset, aorr or srr");
  analyze_cmd->add_option("--out", analyze.out, "Channel CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (sweep_cmd->parsed()) return cmd_sweep(sweep);
    if (hist_cmd->parsed()) return cmd_hist(hist);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze);
  } catch (const liftlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
