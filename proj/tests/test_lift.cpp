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
#include <limits>

#include "doctest.h"
#include "liftlab/lift.hpp"
#include "test_support.hpp"

using namespace liftlab;

TEST_CASE("budget split puts lambda on the lower side") {
  const auto b = Budget::split(1.2, 0.25);
  CHECK(b.eps_l == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(b.eps_u == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(b.ratio_eps() == doctest::Approx(1.2).epsilon(1e-15));
  CHECK_FALSE(b.is_unbounded());

  CHECK(Budget::symmetric(0.7).eps_l == 0.7);
  CHECK(Budget::symmetric(0.7).eps_u == 0.7);
  CHECK(Budget::unbounded().is_unbounded());
}

TEST_CASE("lift table matches direct ratios on the worked instance") {
  const auto t = lift_table(test_support::canonical_joint());
  REQUIRE(t.num_secrets() == 2);
  REQUIRE(t.num_outputs() == 3);

  // P(s,x) / (P(s) P(x)) computed by hand: 0.25/(0.5*0.3) etc.
  CHECK(t.lift(0, 0) == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(t.lift(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t.lift(0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(t.lift(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(t.lift(1, 2) == doctest::Approx(5.0 / 3.0).epsilon(1e-14));

  CHECK(t.min_lift[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(t.max_lift[0] == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(t.ratio[0] == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(t.min_lift[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t.ratio[1] == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(t.worst_min() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(t.worst_max() == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(t.worst_ratio() == doctest::Approx(5.0).epsilon(1e-14));

  CHECK(t.prior[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t.out_probs[1] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(t.out_labels == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("independent joints have unit lift everywhere") {
  const auto t = lift_table(test_support::independent_joint());
  CHECK(t.worst_min() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.worst_max() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.worst_ratio() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("budget check accepts boundaries up to the log tolerance") {
  const auto t = lift_table(test_support::canonical_joint());
  const double lo = std::log(3.0);        // |log min lift|
  const double hi = std::log(5.0 / 3.0);  // log max lift

  auto at = [&](double eps_l, double eps_u) {
    return check_budget(t, Budget{eps_l, eps_u});
  };

  CHECK(at(lo, hi).satisfied);
  CHECK(at(lo - 1e-12, hi - 1e-12).satisfied);  // inside kLogTol
  CHECK_FALSE(at(lo - 1e-6, hi).satisfied);
  CHECK_FALSE(at(lo, hi - 1e-6).satisfied);
  CHECK(at(std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity())
            .satisfied);

  const auto c = at(0.1, 0.1);
  CHECK_FALSE(c.satisfied);
  CHECK(c.min_log_lift == doctest::Approx(-std::log(3.0)).epsilon(1e-14));
  CHECK(c.max_log_lift == doctest::Approx(std::log(5.0 / 3.0)).epsilon(1e-14));
  CHECK((c.worst_min_col == 0 || c.worst_min_col == 2));
  CHECK((c.worst_max_col == 0 || c.worst_max_col == 2));
}

TEST_CASE("ratio check uses the per-column max over min") {
  const auto t = lift_table(test_support::canonical_joint());
  CHECK(check_ratio(t, std::log(5.0)));
  CHECK(check_ratio(t, 1.6094379124341003));
  CHECK_FALSE(check_ratio(t, std::log(5.0) - 1e-6));
}

TEST_CASE("average measures match hand-computed values") {
  const auto j = test_support::canonical_joint();
  const auto m = avg_measures(j, 2.0);

  CHECK(m.mi == doctest::Approx(0.1455515830161844).epsilon(1e-14));
  // E_X[ sum_s P(s) |l - 1| ] / 2 = (0.3 * 2/3 + 0 + 0.3 * 2/3) / 2.
  CHECK(m.total_variation == doctest::Approx(0.2).epsilon(1e-14));
  // E_X[ sum_s P(s) (l - 1)^2 ] = 0.6 * (4/9).
  CHECK(m.chi_square == doctest::Approx(0.26666666666666666).epsilon(1e-14));
  CHECK(m.sibson == doctest::Approx(0.22863898696885196).epsilon(1e-14));
  CHECK(m.arimoto == doctest::Approx(0.22863898696885196).epsilon(1e-14));

  const auto ind = avg_measures(test_support::independent_joint(), 2.0);
  CHECK(ind.total_variation == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(ind.chi_square == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(ind.sibson == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("average measures validate the order") {
  const auto j = test_support::canonical_joint();
  CHECK_THROWS_AS(avg_measures(j, 1.0), Error);
  CHECK_THROWS_AS(avg_measures(j, 0.5), Error);

  // The infinite-order limit collapses both informations onto the average
  // best-guess gain log E_X[max_s l].
  const auto inf = avg_measures(j, std::numeric_limits<double>::infinity());
  const double expect = std::log(0.3 * (5.0 / 3.0) + 0.4 + 0.3 * (5.0 / 3.0));
  CHECK(inf.sibson == doctest::Approx(expect).epsilon(1e-13));
  CHECK(inf.arimoto == doctest::Approx(expect).epsilon(1e-13));
}
