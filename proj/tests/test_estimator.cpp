#include <cmath>
#include <stdexcept>

#include "cyclelab/estimator.hpp"
#include "doctest.h"

using namespace cyclelab;
using doctest::Approx;

TEST_CASE("single trial bookkeeping") {
  auto rec = estimate_once(3000, 3.0, Seed{17, 0});
  CHECK(rec.n == 3000);
  CHECK(rec.c == 3.0);
  CHECK(rec.core_size == rec.stripped_size + rec.v1_size);
  CHECK(rec.v2_size <= rec.stripped_size);
  CHECK(rec.sum_phi <= rec.stripped_size);
  CHECK(rec.l_hat_over_n ==
        Approx((rec.core_size - rec.sum_phi) / 3000.0).epsilon(1e-15));
  CHECK(rec.l_hat_over_n >= 0);
  CHECK(rec.l_hat_over_n <= 1);
  CHECK(rec.corollary1_value == Approx(1 - 4 * std::exp(-3.0) - 9 * std::exp(-6.0))
                                    .epsilon(1e-12));
  std::uint64_t hist_mass = 0, hist_count = 0;
  for (auto [size, count] : rec.tree_size_hist) {
    hist_mass += size * count;
    hist_count += count;
  }
  CHECK(hist_count == rec.tree_count);
  CHECK(hist_mass + rec.non_tree_mass + rec.v1_size == rec.core_size);

  auto again = estimate_once(3000, 3.0, Seed{17, 0});
  CHECK(again.core_size == rec.core_size);
  CHECK(again.sum_phi == rec.sum_phi);
  CHECK(again.l_hat_over_n == rec.l_hat_over_n);

  CHECK_THROWS_AS(estimate_once(0, 3.0, Seed{}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_once(100, 1.0, Seed{}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_once(100, 0.5, Seed{}), std::invalid_argument);
}

TEST_CASE("tiny supercritical draws stay well formed") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto rec = estimate_once(40, 1.2, Seed{5000, s});
    CHECK(rec.core_size <= 40);
    CHECK(rec.l_hat_over_n >= 0);
  }
}

TEST_CASE("batch is deterministic and thread-count independent") {
  auto one = estimate_batch(1500, 4.0, 6, Seed{99, 0}, 1);
  auto four = estimate_batch(1500, 4.0, 6, Seed{99, 0}, 4);
  REQUIRE(one.records.size() == 6);
  REQUIRE(four.records.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(one.records[i].seed.master == 99);
    CHECK(one.records[i].seed.stream == i);
    CHECK(one.records[i].core_size == four.records[i].core_size);
    CHECK(one.records[i].sum_phi == four.records[i].sum_phi);
    CHECK(one.records[i].l_hat_over_n == four.records[i].l_hat_over_n);
  }
  CHECK(one.mean == Approx(four.mean).epsilon(1e-15));
  CHECK(one.stderr_mean == Approx(four.stderr_mean).epsilon(1e-15));

  double mean = 0;
  for (const auto& r : one.records) mean += r.l_hat_over_n;
  mean /= 6;
  CHECK(one.mean == Approx(mean).epsilon(1e-14));
  double ss = 0;
  for (const auto& r : one.records) ss += (r.l_hat_over_n - mean) * (r.l_hat_over_n - mean);
  CHECK(one.stderr_mean == Approx(std::sqrt(ss / 5.0 / 6.0)).epsilon(1e-12));

  auto solo = estimate_batch(800, 4.0, 1, Seed{99, 0}, 8);
  CHECK(solo.stderr_mean == 0);
  CHECK(solo.mean == solo.records[0].l_hat_over_n);
}

TEST_CASE("estimate is an upper bound at oracle scale") {
  auto report = exactness_check_small(12, 6.0, 150, Seed{314, 0});
  REQUIRE(report.rows.size() == 150);
  CHECK(report.violations == 0);
  bool some_core = false;
  for (const auto& row : report.rows) {
    CHECK(row.gap >= 0);
    some_core |= row.core_size > 0;
  }
  CHECK(some_core);
  CHECK_THROWS_AS(exactness_check_small(17, 6.0, 1, Seed{}), std::invalid_argument);
}
