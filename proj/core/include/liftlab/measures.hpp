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

#ifndef LIFTLAB_MEASURES_HPP_
#define LIFTLAB_MEASURES_HPP_

#include <string>
#include <vector>

#include "liftlab/lift.hpp"

namespace liftlab {

// Aggregations of a lift column into a single per-output deviation score.
enum class Deviation {
  kEll1,   // sum_r P(r) |l - 1|
  kChi2,   // sum_r P(r) (l - 1)^2
  kAlpha,  // (sum_r P(r) l^alpha)^(1/alpha)
};

// The privacy notions the mechanisms can enforce. The first three constrain
// the raw lift column (two-sided, ratio, symmetric); the last three
// constrain a Deviation score of the column and of its reciprocal.
enum class MeasureTag { kAlip, kLdp, kLip, kEll1, kChi2, kAlphaLift };

struct MeasureKind {
  MeasureTag tag = MeasureTag::kAlip;
  double alpha = 2.0;  // order used when tag == kAlphaLift

  static MeasureKind alip() { return {MeasureTag::kAlip, 2.0}; }
  static MeasureKind ldp() { return {MeasureTag::kLdp, 2.0}; }
  static MeasureKind lip() { return {MeasureTag::kLip, 2.0}; }
  static MeasureKind ell1() { return {MeasureTag::kEll1, 2.0}; }
  static MeasureKind chi2() { return {MeasureTag::kChi2, 2.0}; }
  static MeasureKind alpha_lift(double a) { return {MeasureTag::kAlphaLift, a}; }

  bool is_extended() const {
    return tag == MeasureTag::kEll1 || tag == MeasureTag::kChi2 ||
           tag == MeasureTag::kAlphaLift;
  }
  Deviation deviation() const;

  std::string name() const;
};

// Parses "alip", "ldp", "lip", "ell1", "chi2", "alpha-lift". Throws
// kParseError on anything else.
MeasureKind measure_kind_from_name(const std::string& name, double alpha);

// Per-output deviation of the lift column from 1. For kAlpha the order must
// be > 1 (kAlphaOutOfRange otherwise).
std::vector<double> lift_deviations(const LiftTable& table, Deviation kind,
                                    double alpha = 2.0);

// The same aggregation applied to the reciprocal of each lift. Requires
// strictly positive lifts (kZeroLift otherwise).
std::vector<double> inverse_lift_deviations(const LiftTable& table,
                                            Deviation kind,
                                            double alpha = 2.0);

// Largest deviation score a column may have when the underlying lifts meet a
// one-sided log budget eps: e^eps - 1 for kEll1, (e^eps - 1)^2 for kChi2,
// e^eps for kAlpha. Used both as the partition threshold for extended kinds
// and as the guarantee the deviation measures inherit from a lift budget.
double deviation_threshold(Deviation kind, double alpha, double eps);

enum class BoundSide { kMax, kMin };

struct ImpliedBound {
  double bound = 0.0;    // on the max lift (kMax) or the min lift (kMin)
  std::size_t column = 0;  // output attaining the extreme lift
  std::size_t secret = 0;  // secret attaining it within that column
  double actual = 0.0;     // the extreme lift itself
};

// Converts a budget on a deviation score back into a bound on the raw lift:
// if every column's deviation is at most measure_budget, the max lift cannot
// exceed (kMax), or the min lift cannot fall below (kMin), the returned
// bound. The prior entering the formula is that of the extremal secret at
// the worst column of `table`.
ImpliedBound implied_lift_bound(const LiftTable& table, double measure_budget,
                                Deviation kind, double alpha, BoundSide side);

}  // namespace liftlab

#endif  // LIFTLAB_MEASURES_HPP_
