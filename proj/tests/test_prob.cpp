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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "liftlab/prob.hpp"
#include "test_support.hpp"

using namespace liftlab;

namespace {

bool throws_code(ErrorCode want, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == want;
  }
  return false;
}

}  // namespace

TEST_CASE("joint validation normalizes and exposes marginals") {
  const auto j = test_support::canonical_joint();
  CHECK(j.num_rows() == 2);
  CHECK(j.num_cols() == 3);
  CHECK(j(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(j.row_sums()[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(j.row_sums()[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(j.col_sums()[0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(j.col_sums()[1] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(j.col_sums()[2] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(j.row_labels() == std::vector<std::string>{"s1", "s2"});
  CHECK(j.col_labels() == std::vector<std::string>{"x1", "x2", "x3"});

  double total = 0.0;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 3; ++c) total += j(r, c);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("joint validation rejects malformed tables") {
  Mat ok(2, 2);
  ok(0, 0) = 0.25;
  ok(0, 1) = 0.25;
  ok(1, 0) = 0.25;
  ok(1, 1) = 0.25;

  SUBCASE("negative entry") {
    Mat m = ok;
    m(0, 0) = -0.1;
    m(1, 1) = 0.6;
    CHECK(throws_code(ErrorCode::kNegativeEntry, [&] {
      JointDistribution::validate(m, {"a", "b"}, {"u", "v"});
    }));
  }
  SUBCASE("non-finite entry") {
    Mat m = ok;
    m(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK(throws_code(ErrorCode::kNegativeEntry, [&] {
      JointDistribution::validate(m, {"a", "b"}, {"u", "v"});
    }));
  }
  SUBCASE("sum far from one") {
    Mat m = ok;
    m(0, 0) = 0.5;
    CHECK(throws_code(ErrorCode::kSumOutOfTolerance, [&] {
      JointDistribution::validate(m, {"a", "b"}, {"u", "v"});
    }));
  }
  SUBCASE("label count mismatch") {
    CHECK(throws_code(ErrorCode::kLabelMismatch, [&] {
      JointDistribution::validate(ok, {"a"}, {"u", "v"});
    }));
  }
  SUBCASE("duplicate labels") {
    CHECK(throws_code(ErrorCode::kLabelMismatch, [&] {
      JointDistribution::validate(ok, {"a", "a"}, {"u", "v"});
    }));
  }
  SUBCASE("empty row support") {
    Mat m(2, 2);
    m(0, 0) = 0.5;
    m(0, 1) = 0.5;
    CHECK(throws_code(ErrorCode::kEmptySupport, [&] {
      JointDistribution::validate(m, {"a", "b"}, {"u", "v"});
    }));
  }
}

TEST_CASE("channel validation renormalizes rows and checks labels") {
  Mat rows(2, 2);
  rows(0, 0) = 0.7;
  rows(0, 1) = 0.3;
  rows(1, 0) = 0.5;
  rows(1, 1) = 0.5;
  const auto ch = Channel::validate(rows, {"x1", "x2"}, {"y1", "y2"});
  CHECK(ch(0, 0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(ch.num_inputs() == 2);
  CHECK(ch.num_outputs() == 2);

  const auto id = Channel::identity({"a", "b", "c"});
  CHECK(id.num_inputs() == 3);
  CHECK(id(0, 0) == 1.0);
  CHECK(id(0, 1) == 0.0);
  CHECK(id.out_labels() == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("entropy has the expected closed forms") {
  CHECK(entropy({0.5, 0.5}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(entropy({0.25, 0.25, 0.25, 0.25}) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(entropy({1.0, 0.0}) == 0.0);
  CHECK(entropy({0.3, 0.4, 0.3}) ==
        doctest::Approx(1.0888999753452238).epsilon(1e-15));
}

TEST_CASE("mutual information matches the direct-formula value") {
  const auto j = test_support::canonical_joint();
  // sum P(s,x) log[P(s,x) / (P(s) P(x))], cross-checked against
  // H(S) + H(X) - H(S,X).
  CHECK(mutual_information(j) ==
        doctest::Approx(0.1455515830161844).epsilon(1e-14));
  CHECK(normalized_mutual_information(j) ==
        doctest::Approx(0.1455515830161844 / 0.6931471805599453)
            .epsilon(1e-13));

  CHECK(mutual_information(test_support::independent_joint()) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("channel composition marginalizes outputs") {
  const auto j = test_support::canonical_joint();

  SUBCASE("identity keeps the joint") {
    const auto out = compose_channel(j, Channel::identity(j.col_labels()));
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        CHECK(out(r, c) == doctest::Approx(j(r, c)).epsilon(1e-15));
  }

  SUBCASE("merging two columns adds their cells") {
    Mat rows(3, 2);
    rows(0, 0) = 1.0;  // x1 -> m
    rows(1, 1) = 1.0;  // x2 -> x2
    rows(2, 0) = 1.0;  // x3 -> m
    const auto ch = Channel::validate(rows, j.col_labels(), {"m", "x2"});
    const auto out = compose_channel(j, ch);
    CHECK(out.num_cols() == 2);
    CHECK(out(0, 0) == doctest::Approx(0.30).epsilon(1e-15));
    CHECK(out(1, 0) == doctest::Approx(0.30).epsilon(1e-15));
    CHECK(out(0, 1) == doctest::Approx(0.20).epsilon(1e-15));
    CHECK(out.col_labels() == std::vector<std::string>{"m", "x2"});
  }

  SUBCASE("zero-probability outputs are dropped") {
    Mat rows(3, 2);
    rows(0, 0) = 1.0;
    rows(1, 0) = 1.0;
    rows(2, 0) = 1.0;
    const auto ch = Channel::validate(rows, j.col_labels(), {"all", "never"});
    const auto out = compose_channel(j, ch);
    CHECK(out.num_cols() == 1);
    CHECK(out.col_labels() == std::vector<std::string>{"all"});
  }

  SUBCASE("label mismatch is rejected") {
    Mat rows(2, 2, 0.5);
    const auto ch = Channel::validate(rows, {"p", "q"}, {"y1", "y2"});
    CHECK_THROWS_AS(compose_channel(j, ch), Error);
  }
}

TEST_CASE("joint from marginal and channel multiplies through") {
  Mat rows(2, 2);
  rows(0, 0) = 0.9;
  rows(0, 1) = 0.1;
  rows(1, 0) = 0.2;
  rows(1, 1) = 0.8;
  const auto ch = Channel::validate(rows, {"x1", "x2"}, {"y1", "y2"});
  const auto j = joint_from_marginal_channel({{"x1", "x2"}, {0.4, 0.6}}, ch);
  CHECK(j(0, 0) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(j(0, 1) == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(j(1, 0) == doctest::Approx(0.12).epsilon(1e-15));
  CHECK(j(1, 1) == doctest::Approx(0.48).epsilon(1e-15));
}

TEST_CASE("seed mixing separates trial streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(mix_seed(1, i));
  CHECK(seen.size() == 1000);
  CHECK(mix_seed(1, 7) == mix_seed(1, 7));
  CHECK(mix_seed(1, 7) != mix_seed(2, 7));
}

TEST_CASE("sampled joints are reproducible and fully supported") {
  const auto a = sample_random_joint(4, 9, 123);
  const auto b = sample_random_joint(4, 9, 123);
  const auto c = sample_random_joint(4, 9, 124);

  double total = 0.0;
  double min_cell = 1.0;
  bool identical = true;
  bool differs = false;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t col = 0; col < 9; ++col) {
      total += a(r, col);
      min_cell = std::min(min_cell, a(r, col));
      identical = identical && a(r, col) == b(r, col);
      differs = differs || a(r, col) != c(r, col);
    }
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(min_cell >= kMinSampledCell);
  CHECK(identical);
  CHECK(differs);
  CHECK(a.row_labels()[0] == "s1");
  CHECK(a.col_labels()[8] == "x9");
}

TEST_CASE("default labels enumerate from one") {
  const auto labels = default_labels("x", 3);
  CHECK(labels == std::vector<std::string>{"x1", "x2", "x3"});
}
