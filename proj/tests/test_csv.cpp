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

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "liftlab/csv.hpp"
#include "test_support.hpp"

using namespace liftlab;

TEST_CASE("format_double round-trips doubles exactly") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  for (double v : {1.0 / 3.0, 0.30000000000000004,
                   std::numeric_limits<double>::min(), 12345.6789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("joint csv parses labeled input") {
  const std::string text =
      ",x1,x2,x3\n"
      "s1,0.25,0.20,0.05\n"
      "s2,0.05,0.20,0.25\n";
  const auto j = joint_from_csv_text(text);
  CHECK(j.num_rows() == 2);
  CHECK(j.num_cols() == 3);
  CHECK(j(0, 2) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(j.row_labels() == std::vector<std::string>{"s1", "s2"});
  CHECK(j.col_labels() == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("joint csv generates labels for bare numeric tables") {
  const auto j = joint_from_csv_text("0.25,0.25\n0.25,0.25\n");
  CHECK(j.num_rows() == 2);
  CHECK(j.row_labels() == std::vector<std::string>{"s1", "s2"});
  CHECK(j.col_labels() == std::vector<std::string>{"x1", "x2"});
}

TEST_CASE("joint csv rejects malformed input") {
  CHECK_THROWS_AS(joint_from_csv_text(""), Error);
  CHECK_THROWS_AS(joint_from_csv_text(",x1,x2\ns1,0.5,oops\n"), Error);
  CHECK_THROWS_AS(joint_from_csv_text(",x1,x2\ns1,0.5\n"), Error);
  // Structurally fine but probabilistically invalid.
  CHECK_THROWS_AS(joint_from_csv_text("0.9,0.4\n0.1,0.1\n"), Error);
}

TEST_CASE("joint csv writer emits labels and round-trips") {
  const auto j = test_support::canonical_joint();
  std::ostringstream out;
  joint_to_csv(j, out);
  const std::string text = out.str();
  CHECK(text.substr(0, text.find('\n')) == ",x1,x2,x3");

  const auto back = joint_from_csv_text(text);
  for (std::size_t r = 0; r < j.num_rows(); ++r)
    for (std::size_t c = 0; c < j.num_cols(); ++c)
      CHECK(back(r, c) == j(r, c));
  CHECK(back.row_labels() == j.row_labels());
}

TEST_CASE("joint csv file io round-trips") {
  const std::string path = "liftlab_test_joint.csv";
  joint_to_csv_file(test_support::canonical_joint(), path);
  const auto back = joint_from_csv_file(path);
  CHECK(back(1, 2) == 0.25);
  std::remove(path.c_str());

  CHECK_THROWS_AS(joint_from_csv_file("does_not_exist_liftlab.csv"), Error);
}

TEST_CASE("channel csv lists one labeled row per input") {
  Mat rows(2, 2);
  rows(0, 0) = 1.0;
  rows(1, 1) = 1.0;
  const auto ch = Channel::validate(rows, {"x1", "x2"}, {"y1", "y2"});
  std::ostringstream out;
  channel_to_csv(ch, out);
  CHECK(out.str() == ",y1,y2\nx1,1,0\nx2,0,1\n");
}
