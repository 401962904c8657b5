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

#ifndef LIFTLAB_CSV_HPP_
#define LIFTLAB_CSV_HPP_

#include <iosfwd>
#include <string>

#include "liftlab/prob.hpp"

namespace liftlab {

// Formats a double with 17 significant digits, enough for exact round-trips.
std::string format_double(double value);

// Joint table CSV. The header row (column labels) and the label column are
// both optional on input and detected by whether the cells parse as numbers;
// missing labels are generated. The writer always emits both.
JointDistribution joint_from_csv_text(const std::string& text);
JointDistribution joint_from_csv_file(const std::string& path);
void joint_to_csv(const JointDistribution& joint, std::ostream& out);
void joint_to_csv_file(const JointDistribution& joint, const std::string& path);

// Channel CSV: header row of output labels, one labeled row per input.
void channel_to_csv(const Channel& channel, std::ostream& out);
void channel_to_csv_file(const Channel& channel, const std::string& path);

}  // namespace liftlab

#endif  // LIFTLAB_CSV_HPP_
