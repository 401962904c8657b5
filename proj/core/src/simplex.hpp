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

#ifndef LIFTLAB_SRC_SIMPLEX_HPP_
#define LIFTLAB_SRC_SIMPLEX_HPP_

#include <vector>

#include "liftlab/matrix.hpp"

namespace liftlab::internal {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// Minimizes c.x subject to A x = b, x >= 0. Two-phase tableau simplex with
// Bland's rule, so the pivot sequence (and the returned basic solution) is a
// pure function of the input.
LpResult solve_equality_lp(const Mat& a, const std::vector<double>& b,
                           const std::vector<double>& c);

}  // namespace liftlab::internal

#endif  // LIFTLAB_SRC_SIMPLEX_HPP_
