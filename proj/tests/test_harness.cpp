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

#include <cmath>
#include <string>

#include "doctest.h"
#include "liftlab/harness.hpp"
#include "test_support.hpp"

using namespace liftlab;

TEST_CASE("mechanism names round-trip") {
  for (MechanismId id :
       {MechanismId::kWatchdogComplete, MechanismId::kWatchdogSubset,
        MechanismId::kOptimalResponse, MechanismId::kSubsetResponse}) {
    CHECK(mechanism_from_name(mechanism_name(id)) == id);
  }
  CHECK(std::string(mechanism_name(MechanismId::kOptimalResponse)) == "aorr");
  CHECK(std::string(mechanism_name(MechanismId::kSubsetResponse)) == "srr");
  CHECK_THROWS_AS(mechanism_from_name("bogus"), Error);
}

TEST_CASE("run_mechanism dispatches to the named synthesis") {
  const auto j = test_support::canonical_joint();
  const Budget b{0.6, 0.6};
  const auto direct = optimal_response(j, b);
  const auto routed =
      run_mechanism(MechanismId::kOptimalResponse, j, MeasureKind::alip(), b);
  CHECK(routed.nmi == doctest::Approx(direct.nmi).epsilon(1e-14));
  const auto watchdog = run_mechanism(MechanismId::kWatchdogComplete, j,
                                      MeasureKind::alip(), b);
  CHECK(watchdog.nmi == doctest::Approx(0.6180656462921542).epsilon(1e-12));
}

TEST_CASE("sweep records are deterministic and carry the exact header") {
  SweepOptions opt;
  opt.num_secrets = 3;
  opt.num_symbols = 5;
  opt.trials = 8;
  opt.eps_values = {0.5, 1.5};
  opt.mechanisms = {MechanismId::kWatchdogComplete,
                    MechanismId::kWatchdogSubset};
  opt.seed = 3;
  opt.measure_time = false;

  const auto a = run_sweep(opt);
  const auto b = run_sweep(opt);
  CHECK(a.records.size() == 4);
  CHECK(a.diagnostics.empty());
  CHECK(sweep_to_csv(a.records) == sweep_to_csv(b.records));

  opt.threads = 4;
  const auto c = run_sweep(opt);
  CHECK(sweep_to_csv(a.records) == sweep_to_csv(c.records));

  const std::string csv = sweep_to_csv(a.records);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "eps,lambda,mechanism,kind,alpha,mean_nmi,mean_max_lift_leak,"
        "mean_min_lift_leak,mean_wall_time_s,trials");
  CHECK(csv.find("watchdog-complete") != std::string::npos);
  CHECK(csv.find(",alip,") != std::string::npos);
}

TEST_CASE("sweep on a fixed joint reproduces the frozen mechanism value") {
  SweepOptions opt;
  opt.trials = 4;
  opt.eps_values = {1.2};
  opt.lambdas = {0.5};
  opt.mechanisms = {MechanismId::kWatchdogComplete};
  opt.measure_time = false;
  opt.joint_override = test_support::canonical_joint();

  const auto res = run_sweep(opt);
  REQUIRE(res.records.size() == 1);
  const auto& r = res.records[0];
  CHECK(r.eps == 1.2);
  CHECK(r.lambda == 0.5);
  CHECK(r.mechanism == "watchdog-complete");
  CHECK(r.kind == "alip");
  CHECK(r.alpha == 0.0);
  CHECK(r.trials == 4);
  CHECK(r.mean_nmi == doctest::Approx(0.6180656462921542).epsilon(1e-12));
  CHECK(r.mean_max_lift_leak == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(r.mean_min_lift_leak == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(r.mean_wall_time_s == 0.0);
}

TEST_CASE("alpha-lift sweeps expand the order axis") {
  SweepOptions opt;
  opt.trials = 2;
  opt.num_secrets = 2;
  opt.num_symbols = 4;
  opt.eps_values = {1.0};
  opt.mechanisms = {MechanismId::kWatchdogSubset};
  opt.kind = MeasureKind::alpha_lift(2.0);
  opt.alphas = {2.0, 3.0};
  opt.measure_time = false;

  const auto res = run_sweep(opt);
  REQUIRE(res.records.size() == 2);
  CHECK(res.records[0].kind == "alpha-lift");
  CHECK(res.records[0].alpha == 2.0);
  CHECK(res.records[1].alpha == 3.0);
}

TEST_CASE("sweep options are validated up front") {
  SweepOptions opt;
  opt.mechanisms = {MechanismId::kWatchdogComplete};

  SUBCASE("empty grid") { CHECK_THROWS_AS(run_sweep(opt), Error); }
  SUBCASE("bad lambda") {
    opt.eps_values = {1.0};
    opt.lambdas = {1.0};
    CHECK_THROWS_AS(run_sweep(opt), Error);
  }
  SUBCASE("no mechanisms") {
    opt.eps_values = {1.0};
    opt.mechanisms.clear();
    CHECK_THROWS_AS(run_sweep(opt), Error);
  }
  SUBCASE("zero trials") {
    opt.eps_values = {1.0};
    opt.trials = 0;
    CHECK_THROWS_AS(run_sweep(opt), Error);
  }
  SUBCASE("bad alpha for the alpha-lift kind") {
    opt.eps_values = {1.0};
    opt.kind = MeasureKind::alpha_lift(2.0);
    opt.alphas = {1.0};
    CHECK_THROWS_AS(run_sweep(opt), Error);
  }
}

TEST_CASE("capped cells are skipped with a diagnostic") {
  SweepOptions opt;
  opt.num_secrets = 3;
  opt.num_symbols = 17;
  opt.trials = 2;
  opt.eps_values = {1.0};
  opt.mechanisms = {MechanismId::kOptimalResponse};
  opt.measure_time = false;

  const auto res = run_sweep(opt);
  CHECK(res.all_skipped());
  CHECK(res.records.empty());
  REQUIRE(!res.diagnostics.empty());
  CHECK(res.diagnostics[0].find("aorr") != std::string::npos);
}

TEST_CASE("mean utility grows with the budget") {
  SweepOptions opt;
  opt.num_secrets = 4;
  opt.num_symbols = 8;
  opt.trials = 60;
  opt.eps_values = {0.5, 2.0, 6.0};
  opt.mechanisms = {MechanismId::kWatchdogSubset};
  opt.measure_time = false;
  opt.seed = 11;

  const auto res = run_sweep(opt);
  REQUIRE(res.records.size() == 3);
  CHECK(res.records[0].mean_nmi < res.records[1].mean_nmi + 0.01);
  CHECK(res.records[1].mean_nmi < res.records[2].mean_nmi + 0.01);
  CHECK(res.records[2].mean_nmi <= 1.0 + 1e-12);
}

TEST_CASE("histogram densities integrate to one") {
  HistogramOptions opt;
  opt.num_secrets = 4;
  opt.num_symbols = 10;
  opt.trials = 40;
  opt.bins = 32;
  opt.seed = 5;

  const auto h = lift_histogram(opt);
  REQUIRE(h.bin_centers.size() == 32);
  double min_mass = 0.0;
  double max_mass = 0.0;
  for (std::size_t b = 0; b < 32; ++b) {
    min_mass += h.min_lift_density[b] * h.bin_width;
    max_mass += h.max_lift_density[b] * h.bin_width;
  }
  CHECK(min_mass == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(max_mass == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(h.lo < 0.0);
  CHECK(h.hi > 0.0);

  const std::string csv = histogram_to_csv(h);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "bin_center,min_lift_density,max_lift_density");
}

TEST_CASE("histogram handles a degenerate log-lift range") {
  HistogramOptions opt;
  opt.trials = 3;
  opt.bins = 8;
  opt.joint_override = test_support::independent_joint();

  const auto h = lift_histogram(opt);
  CHECK(h.hi > h.lo);
  double min_mass = 0.0;
  for (std::size_t b = 0; b < 8; ++b) min_mass += h.min_lift_density[b] * h.bin_width;
  CHECK(min_mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("analyze renders a key-value report") {
  AnalyzeRequest req;
  req.kind = MeasureKind::alip();
  req.budget = Budget{0.6, 0.6};
  req.mechanism = MechanismId::kSubsetResponse;

  const auto rep = analyze_joint(test_support::canonical_joint(), req);
  CHECK(rep.satisfied);
  CHECK(rep.nmi == doctest::Approx(0.75627077391232089).epsilon(1e-12));

  const std::string text = report_to_text(rep);
  CHECK(text.find("satisfied: true\n") != std::string::npos);
  CHECK(text.find("nmi: ") != std::string::npos);
  CHECK(text.find("max_lift_leak: ") != std::string::npos);
  CHECK(text.find("passthrough: x2\n") != std::string::npos);
  CHECK(text.find("group_1: x1+x3\n") != std::string::npos);
  CHECK(text.find("residual_eps_l") == std::string::npos);

  // An unsatisfied report exposes the residual leakage: merging a lone
  // high-risk column changes nothing, so the budget check must fail.
  Mat m(2, 3);
  m(0, 0) = 0.05;
  m(0, 1) = 0.25;
  m(0, 2) = 0.20;
  m(1, 0) = 0.20;
  m(1, 1) = 0.20;
  m(1, 2) = 0.10;
  const auto lone =
      JointDistribution::validate(m, {"s1", "s2"}, {"x1", "x2", "x3"});
  req.mechanism = MechanismId::kWatchdogComplete;
  req.budget = Budget{0.9, 0.45};
  const auto tight = analyze_joint(lone, req);
  REQUIRE_FALSE(tight.satisfied);
  const std::string t2 = report_to_text(tight);
  CHECK(t2.find("residual_eps_l: ") != std::string::npos);
  CHECK(t2.find("residual_eps_u: ") != std::string::npos);
}
