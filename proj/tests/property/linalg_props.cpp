#include "latdim/linalg.hpp"
#include "latdim/random.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace latdim;

namespace {

TangentFrame random_frame(std::uint64_t seed, Eigen::Index ambient, Eigen::Index dim) {
  return orthonormalize(CounterRng(seed).normal_matrix(ambient, dim));
}

}  // namespace

TEST_CASE("geodesic distance is a metric on equal-dimensional frames") {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const Eigen::Index ambient = 4 + static_cast<Eigen::Index>(t % 7);
    const Eigen::Index dim = 1 + static_cast<Eigen::Index>(t % 3);
    const auto a = random_frame(3 * t, ambient, dim);
    const auto b = random_frame(3 * t + 1, ambient, dim);
    const auto c = random_frame(3 * t + 2, ambient, dim);
    const double ab = geodesic_distance_normalized(a, b);
    CHECK(ab == geodesic_distance_normalized(b, a));
    CHECK(ab <= geodesic_distance_normalized(a, c) + geodesic_distance_normalized(c, b) + 1e-9);
    CHECK(ab >= 0.0);
    CHECK(ab <= std::numbers::pi / 2 + 1e-15);
  }
}

TEST_CASE("projection distance is the sine of the largest principal angle") {
  for (std::uint64_t t = 0; t < 300; ++t) {
    const Eigen::Index dim = 1 + static_cast<Eigen::Index>(t % 4);
    const auto a = random_frame(5000 + 2 * t, 9, dim);
    const auto b = random_frame(5001 + 2 * t, 9, dim);
    const auto angles = principal_angles(a, b);
    CHECK(std::abs(projection_distance(a, b) - std::sin(angles.back())) < 1e-9);
  }
}

TEST_CASE("svd invariants across aspect ratios") {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const Eigen::Index base = 3 + static_cast<Eigen::Index>(t % 6);
    const Eigen::Index rows = t % 3 == 1 ? 2 * base : base;
    const Eigen::Index cols = t % 3 == 2 ? 2 * base : base;
    const Matrix m = CounterRng(10000 + t).normal_matrix(rows, cols);
    const auto f = svd(m);
    const Eigen::Index r = std::min(rows, cols);
    REQUIRE(f.rank_bound() == r);
    CHECK((f.reconstruct() - m).norm() <= 1e-8 * m.norm());
    CHECK((f.left.transpose() * f.left - Matrix::Identity(r, r)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((f.right.transpose() * f.right - Matrix::Identity(r, r)).cwiseAbs().maxCoeff() < 1e-10);
    for (Eigen::Index i = 1; i < r; ++i) CHECK(f.singular_values(i) <= f.singular_values(i - 1));
    CHECK(f.singular_values(r - 1) >= 0.0);
    for (Eigen::Index j = 0; j < r; ++j) {
      Eigen::Index pivot = 0;
      f.left.col(j).cwiseAbs().maxCoeff(&pivot);
      CHECK(f.left(pivot, j) > 0.0);
    }
  }
}

TEST_CASE("geodesic distance ignores the choice of basis") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(t % 4);
    const auto a = random_frame(20000 + 2 * t, 12, dim);
    const auto b = random_frame(20001 + 2 * t, 12, dim);
    const Matrix q = random_orthogonal(dim, CounterRng(30000 + t));
    const TangentFrame aq(a.basis() * q);
    CHECK(std::abs(geodesic_distance_normalized(aq, b) - geodesic_distance_normalized(a, b)) < 1e-9);
  }
}
