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

#include "liftlab/measures.hpp"

#include <algorithm>
#include <cmath>

namespace liftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_order(Deviation kind, double alpha) {
  if (kind == Deviation::kAlpha && (std::isnan(alpha) || alpha <= 1.0)) {
    throw Error(ErrorCode::kAlphaOutOfRange,
                "order must be greater than 1, got " + std::to_string(alpha));
  }
}

// (sum_r w(r) v(r)^alpha)^(1/alpha) in log space; zero values drop out.
double alpha_norm(const std::vector<double>& weights,
                  const std::vector<double>& values, double alpha) {
  double peak = -kInf;
  std::vector<double> logs(values.size(), -kInf);
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r] > 0.0) {
      logs[r] = std::log(weights[r]) + alpha * std::log(values[r]);
      peak = std::max(peak, logs[r]);
    }
  }
  if (peak == -kInf) return 0.0;
  double acc = 0.0;
  for (double t : logs) {
    if (t != -kInf) acc += std::exp(t - peak);
  }
  return std::exp((peak + std::log(acc)) / alpha);
}

std::vector<double> deviations_of(const LiftTable& table, Deviation kind,
                                  double alpha, bool invert) {
  require_order(kind, alpha);
  const std::size_t nr = table.num_secrets();
  const std::size_t nc = table.num_outputs();
  std::vector<double> out(nc, 0.0);
  std::vector<double> column(nr, 0.0);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t r = 0; r < nr; ++r) {
      double l = table.lift(r, c);
      if (invert) {
        if (l <= 0.0) {
          throw Error(ErrorCode::kZeroLift,
                      "lift is zero at output " + table.out_labels[c] +
                          ", reciprocal measures are undefined");
        }
        l = 1.0 / l;
      }
      column[r] = l;
    }
    switch (kind) {
      case Deviation::kEll1: {
        double acc = 0.0;
        for (std::size_t r = 0; r < nr; ++r) {
          acc += table.prior[r] * std::abs(column[r] - 1.0);
        }
        out[c] = acc;
        break;
      }
      case Deviation::kChi2: {
        double acc = 0.0;
        for (std::size_t r = 0; r < nr; ++r) {
          const double d = column[r] - 1.0;
          acc += table.prior[r] * d * d;
        }
        out[c] = acc;
        break;
      }
      case Deviation::kAlpha:
        out[c] = alpha_norm(table.prior, column, alpha);
        break;
    }
  }
  return out;
}

}  // namespace

Deviation MeasureKind::deviation() const {
  switch (tag) {
    case MeasureTag::kEll1:
      return Deviation::kEll1;
    case MeasureTag::kChi2:
      return Deviation::kChi2;
    case MeasureTag::kAlphaLift:
      return Deviation::kAlpha;
    default:
      throw Error(ErrorCode::kParseError,
                  name() + " has no deviation aggregation");
  }
}

std::string MeasureKind::name() const {
  switch (tag) {
    case MeasureTag::kAlip:
      return "alip";
    case MeasureTag::kLdp:
      return "ldp";
    case MeasureTag::kLip:
      return "lip";
    case MeasureTag::kEll1:
      return "ell1";
    case MeasureTag::kChi2:
      return "chi2";
    case MeasureTag::kAlphaLift:
      return "alpha-lift";
  }
  return "unknown";
}

MeasureKind measure_kind_from_name(const std::string& name, double alpha) {
  if (name == "alip") return MeasureKind::alip();
  if (name == "ldp") return MeasureKind::ldp();
  if (name == "lip") return MeasureKind::lip();
  if (name == "ell1") return MeasureKind::ell1();
  if (name == "chi2") return MeasureKind::chi2();
  if (name == "alpha-lift") return MeasureKind::alpha_lift(alpha);
  throw Error(ErrorCode::kParseError, "unknown measure kind '" + name + "'");
}

std::vector<double> lift_deviations(const LiftTable& table, Deviation kind,
                                    double alpha) {
  return deviations_of(table, kind, alpha, false);
}

std::vector<double> inverse_lift_deviations(const LiftTable& table,
                                            Deviation kind, double alpha) {
  return deviations_of(table, kind, alpha, true);
}

double deviation_threshold(Deviation kind, double alpha, double eps) {
  require_order(kind, alpha);
  switch (kind) {
    case Deviation::kEll1:
      return std::expm1(eps);
    case Deviation::kChi2: {
      const double e = std::expm1(eps);
      return e * e;
    }
    case Deviation::kAlpha:
      return std::exp(eps);
  }
  return 0.0;
}

ImpliedBound implied_lift_bound(const LiftTable& table, double measure_budget,
                                Deviation kind, double alpha, BoundSide side) {
  require_order(kind, alpha);
  if (!(measure_budget > 0.0)) {
    throw Error(ErrorCode::kNegativeEntry,
                "measure budget must be positive");
  }

  ImpliedBound out;
  if (side == BoundSide::kMax) {
    double worst = -kInf;
    for (std::size_t c = 0; c < table.num_outputs(); ++c) {
      if (table.max_lift[c] > worst) {
        worst = table.max_lift[c];
        out.column = c;
      }
    }
    for (std::size_t r = 0; r < table.num_secrets(); ++r) {
      if (table.lift(r, out.column) == worst) {
        out.secret = r;
        break;
      }
    }
    out.actual = worst;
    const double p = table.prior[out.secret];
    switch (kind) {
      case Deviation::kEll1:
        out.bound = measure_budget / p + 1.0;
        break;
      case Deviation::kChi2:
        out.bound = std::sqrt(measure_budget / p) + 1.0;
        break;
      case Deviation::kAlpha:
        out.bound = measure_budget / std::pow(p, 1.0 / alpha);
        break;
    }
  } else {
    double worst = kInf;
    for (std::size_t c = 0; c < table.num_outputs(); ++c) {
      if (table.min_lift[c] < worst) {
        worst = table.min_lift[c];
        out.column = c;
      }
    }
    for (std::size_t r = 0; r < table.num_secrets(); ++r) {
      if (table.lift(r, out.column) == worst) {
        out.secret = r;
        break;
      }
    }
    out.actual = worst;
    const double p = table.prior[out.secret];
    switch (kind) {
      case Deviation::kEll1:
        out.bound = p / (measure_budget + p);
        break;
      case Deviation::kChi2:
        out.bound =
            std::sqrt(p) / (std::sqrt(measure_budget) + std::sqrt(p));
        break;
      case Deviation::kAlpha:
        out.bound = std::pow(p, 1.0 / alpha) / measure_budget;
        break;
    }
  }
  return out;
}

}  // namespace liftlab
