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

#include "doctest.h"
#include "liftlab/measures.hpp"
#include "test_support.hpp"

using namespace liftlab;

TEST_CASE("measure kinds expose names and parse back") {
  CHECK(MeasureKind::alip().name() == "alip");
  CHECK(MeasureKind::ldp().name() == "ldp");
  CHECK(MeasureKind::lip().name() == "lip");
  CHECK(MeasureKind::ell1().name() == "ell1");
  CHECK(MeasureKind::chi2().name() == "chi2");
  CHECK(MeasureKind::alpha_lift(3.0).name() == "alpha-lift");

  CHECK_FALSE(MeasureKind::alip().is_extended());
  CHECK_FALSE(MeasureKind::ldp().is_extended());
  CHECK(MeasureKind::ell1().is_extended());
  CHECK(MeasureKind::alpha_lift(2.0).is_extended());

  for (const char* name : {"alip", "ldp", "lip", "ell1", "chi2"}) {
    CHECK(measure_kind_from_name(name, 2.0).name() == name);
  }
  CHECK(measure_kind_from_name("alpha-lift", 4.0).alpha == 4.0);
  CHECK_THROWS_AS(measure_kind_from_name("nope", 2.0), Error);
}

TEST_CASE("lift deviations match hand-computed column scores") {
  const auto t = lift_table(test_support::canonical_joint());

  // Column x1 has lifts (5/3, 1/3) and prior (0.5, 0.5):
  //   ell1 = 0.5 * 2/3 + 0.5 * 2/3; chi2 = 0.5 * (2/3)^2 * 2;
  //   alpha=2 norm = sqrt(0.5 * (5/3)^2 + 0.5 * (1/3)^2).
  const auto l1 = lift_deviations(t, Deviation::kEll1);
  const auto c2 = lift_deviations(t, Deviation::kChi2);
  const auto a2 = lift_deviations(t, Deviation::kAlpha, 2.0);
  CHECK(l1[0] == doctest::Approx(0.6666666666666667).epsilon(1e-14));
  CHECK(c2[0] == doctest::Approx(0.4444444444444445).epsilon(1e-14));
  CHECK(a2[0] == doctest::Approx(1.2018504251546631).epsilon(1e-14));
  CHECK(l1[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  CHECK(c2[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  CHECK(a2[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(l1[2] == doctest::Approx(l1[0]).epsilon(1e-13));

  // The same aggregations of 1/l: inverse lifts on x1 are (3/5, 3).
  const auto i1 = inverse_lift_deviations(t, Deviation::kEll1);
  const auto ic = inverse_lift_deviations(t, Deviation::kChi2);
  const auto ia = inverse_lift_deviations(t, Deviation::kAlpha, 2.0);
  CHECK(i1[0] == doctest::Approx(1.1999999999999997).epsilon(1e-14));
  CHECK(ic[0] == doctest::Approx(2.079999999999999).epsilon(1e-14));
  CHECK(ia[0] == doctest::Approx(2.1633307652783933).epsilon(1e-14));
  CHECK(i1[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));

  CHECK_THROWS_AS(lift_deviations(t, Deviation::kAlpha, 1.0), Error);
  CHECK_THROWS_AS(inverse_lift_deviations(t, Deviation::kAlpha, 0.0), Error);
}

TEST_CASE("deviation thresholds mirror the lift budget") {
  CHECK(deviation_threshold(Deviation::kEll1, 2.0, 0.7) ==
        doctest::Approx(std::expm1(0.7)).epsilon(1e-15));
  CHECK(deviation_threshold(Deviation::kChi2, 2.0, 0.7) ==
        doctest::Approx(std::expm1(0.7) * std::expm1(0.7)).epsilon(1e-15));
  CHECK(deviation_threshold(Deviation::kAlpha, 3.0, 0.7) ==
        doctest::Approx(std::exp(0.7)).epsilon(1e-15));
}

TEST_CASE("deviation budgets imply raw lift bounds") {
  const auto t = lift_table(test_support::canonical_joint());

  SUBCASE("ell1 budget caps the max lift") {
    const auto b =
        implied_lift_bound(t, 0.6666666666666667, Deviation::kEll1, 2.0,
                           BoundSide::kMax);
    // bound = budget / P(worst secret) + 1 with P = 0.5.
    CHECK(b.bound == doctest::Approx(2.3333333333333335).epsilon(1e-14));
    CHECK(b.actual == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(b.actual <= b.bound + 1e-12);
  }

  SUBCASE("chi2 budget caps the max lift") {
    const auto b = implied_lift_bound(t, 0.4444444444444445, Deviation::kChi2,
                                      2.0, BoundSide::kMax);
    CHECK(b.bound ==
          doctest::Approx(std::sqrt(0.4444444444444445 / 0.5) + 1.0)
              .epsilon(1e-14));
    CHECK(b.actual <= b.bound + 1e-12);
  }

  SUBCASE("alpha budget floors the min lift") {
    const auto b = implied_lift_bound(t, 2.1633307652783933, Deviation::kAlpha,
                                      2.0, BoundSide::kMin);
    CHECK(b.bound == doctest::Approx(0.3268602252303067).epsilon(1e-14));
    CHECK(b.actual == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(b.actual >= b.bound - 1e-12);
  }
}
