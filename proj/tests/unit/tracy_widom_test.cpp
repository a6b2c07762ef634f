#include "latdim/errors.hpp"
#include "latdim/tracy_widom.hpp"

#include <doctest.h>

#include <cmath>

using namespace latdim;

// Frozen reference values: F1 quantiles from the published tables, and the
// centering/scaling constants evaluated to 30 digits offline.

TEST_CASE("table nodes round-trip exactly") {
  for (const auto& node : tw::quantile_table()) CHECK(tw::tw1_quantile(node.prob) == node.quantile);
}

TEST_CASE("table covers the required range with enough nodes") {
  const auto t = tw::quantile_table();
  CHECK(t.size() >= 60);
  CHECK(t.front().prob <= 0.005);
  CHECK(t.back().prob >= 0.995);
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(t[i].prob > t[i - 1].prob);
    CHECK(t[i].quantile > t[i - 1].quantile);
  }
}

TEST_CASE("known quantiles") {
  CHECK(tw::tw1_quantile(0.90) == doctest::Approx(0.4501).epsilon(1e-4));
  CHECK(tw::tw1_quantile(0.90) == 0.450143289058326);
  CHECK(tw::tw1_quantile(0.50) == doctest::Approx(-1.2686).epsilon(1e-4));
  CHECK(tw::tw1_quantile(0.95) == doctest::Approx(0.9793).epsilon(1e-4));
  CHECK(tw::tw1_quantile(0.50) < tw::tw1_quantile(0.90));
}

TEST_CASE("quantile is strictly increasing between nodes") {
  double prev = tw::tw1_quantile(tw::kMinProb);
  for (int i = 1; i < 200; ++i) {
    const double p = tw::kMinProb + (tw::kMaxProb - tw::kMinProb) * i / 199.0;
    const double q = tw::tw1_quantile(p);
    CHECK(q > prev);
    prev = q;
  }
}

TEST_CASE("quantile outside the table is rejected") {
  CHECK_THROWS_AS(tw::tw1_quantile(0.004), OutOfRange);
  CHECK_THROWS_AS(tw::tw1_quantile(0.996), OutOfRange);
  CHECK_THROWS_AS(tw::tw1_quantile(std::nan("")), OutOfRange);
  CHECK_THROWS_AS(tw::tw_threshold(1.0, 100, 100, 0.5e-3), OutOfRange);
}

TEST_CASE("centering constant") {
  CHECK(tw::centering_mu(2, 2) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(tw::centering_mu(8, 8) == doctest::Approx(3.75).epsilon(1e-15));
  CHECK(tw::centering_mu(200, 100) == doctest::Approx(2.90390915250061456899).epsilon(1e-14));
  CHECK(tw::centering_mu(512, 40) == doctest::Approx(1.63141271366014000628).epsilon(1e-14));
  CHECK(std::abs(tw::centering_mu(1e9, 1) - 1.0) < 1e-4);
}

TEST_CASE("scaling constant") {
  CHECK(tw::scaling_sigma(2, 2) == doctest::Approx(1.44224957030740838232).epsilon(1e-14));
  CHECK(tw::scaling_sigma(8, 8) == doctest::Approx(0.616553018582617525373).epsilon(1e-14));
  CHECK(tw::scaling_sigma(200, 100) == doctest::Approx(0.0668884329764764473843).epsilon(1e-14));
  CHECK(tw::scaling_sigma(512, 40) == doctest::Approx(0.0331929194761641882758).epsilon(1e-14));
}

TEST_CASE("scaling constant is positive on a grid") {
  for (double n = 1; n <= 1e4; n *= 1.7)
    for (double p = 1; p <= 1e4; p *= 1.9) CHECK(tw::scaling_sigma(n, p) > 0.0);
}

TEST_CASE("constants reject counts below one") {
  CHECK_THROWS_AS(tw::centering_mu(0.5, 3), OutOfRange);
  CHECK_THROWS_AS(tw::scaling_sigma(3, 0), OutOfRange);
}

TEST_CASE("threshold") {
  CHECK(tw::tw_threshold(1.0, 200, 100, 0.1) == doctest::Approx(2.93401853172060307139).epsilon(1e-14));
  CHECK(tw::tw_threshold(1e-12, 100, 100, 0.1) < 1e-10);
  CHECK(tw::tw_threshold(2.0, 64, 30, 0.1) == doctest::Approx(2.0 * tw::tw_threshold(1.0, 64, 30, 0.1)));
}
