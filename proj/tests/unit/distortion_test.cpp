#include "fixtures.hpp"
#include "latdim/distortion.hpp"
#include "latdim/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace latdim;

namespace {

DistortionOptions options(std::size_t pairs, std::uint64_t seed = 0, double theta_pre = 0.005) {
  DistortionOptions o;
  o.num_pairs = pairs;
  o.seed = seed;
  o.theta_pre = theta_pre;
  return o;
}

// Planted layers keep their noise floor only with no preprocessing.
DistortionOptions planted_options(std::size_t pairs, std::uint64_t seed = 0) { return options(pairs, seed, 0.0); }

// One tanh layer over a planted rank-8 weight: the tangent space is the
// weight's column space bent by the activation's diagonal.
MlpNetwork bent_planted(std::uint64_t seed) {
  const auto planted = fixture::planted_layer(seed, 24, 20, 8);
  MlpSpec spec = fixture::tanh_spec(seed, 20, 1, 1.0);
  spec.layer_dims = {24};
  return MlpNetwork(spec, {0.3 * planted.weight}, {Vector::Zero(24)});
}

}  // namespace

TEST_CASE("linear planted layer is flat and degenerate") {
  const auto net = fixture::linear_net({fixture::planted_layer(1, 40, 30, 10).weight});
  const auto o = planted_options(20);
  CHECK(i_rand(net, 1, o).mean < 1e-12);
  CHECK(i_local(net, 1, o).mean < 1e-12);
  const auto r = distortion_score(net, 1, o);
  CHECK(r.degenerate);
  CHECK_FALSE(r.score.has_value());
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("bending by tanh makes random pairs disagree") {
  const auto net = bent_planted(2);
  auto o = planted_options(30);
  o.keep_per_pair = true;
  const auto s = i_rand(net, 1, o);
  CHECK(s.skipped == 0);
  CHECK(s.mean > 1e-3);
  CHECK(s.distances.size() == 30);
  for (double d : s.distances) {
    if (std::isnan(d)) continue;
    CHECK(d >= 0.0);
    CHECK(d <= std::numbers::pi / 2);
  }
}

TEST_CASE("a single pair's mean is its distance") {
  const auto net = bent_planted(3);
  const auto s = i_rand(net, 1, planted_options(1, 4));
  REQUIRE(s.distances.size() == 1);
  CHECK(s.mean == s.distances[0]);
}

TEST_CASE("local inconsistency shrinks with epsilon") {
  const auto net = bent_planted(5);
  auto o = planted_options(40, 6);
  double prev = -1.0;
  for (double eps : {1e-3, 1e-2, 1e-1}) {
    o.epsilon = eps;
    const double v = i_local(net, 1, o).mean;
    CHECK(v >= prev);
    prev = v;
  }
  o.epsilon = 1e-3;
  CHECK(i_local(net, 1, o).mean < 1e-2);
}

TEST_CASE("deep tanh net scores above one and is reproducible") {
  const auto net = build_mlp(fixture::tanh_spec(7, 24, 8, 2.0));
  const auto o = options(100, 8);
  const auto a = distortion_score(net, 8, o);
  const auto b = distortion_score(net, 8, o);
  REQUIRE(a.score.has_value());
  CHECK(*a.score > 1.0);
  CHECK(a.i_rand == b.i_rand);
  CHECK(a.i_local == b.i_local);
  CHECK(*a.score == *b.score);
  CHECK(a.num_pairs == 100);
  CHECK(a.epsilon == 0.1);
}

TEST_CASE("sweeps line up with single-layer scores") {
  const auto net = build_mlp(fixture::tanh_spec(9, 16, 4, 2.0));
  auto o = options(20, 10);
  o.keep_per_pair = true;
  const auto single = layer_sweep(net, {3}, o);
  REQUIRE(single.size() == 1);
  CHECK(single[0].layer == 3);

  const auto sweep = layer_sweep(net, {2, 3, 4}, o);
  REQUIRE(sweep.size() == 3);
  CHECK(sweep[1].i_rand == single[0].i_rand);
  CHECK(sweep[1].per_pair_rand.size() == 20);

  const std::vector<double> thetas{0.001, 0.01};
  const auto grid = theta_layer_sweep(net, {2, 4}, thetas, o);
  for (std::size_t t = 0; t < thetas.size(); ++t) {
    o.theta_pre = thetas[t];
    const auto direct = layer_sweep(net, {2, 4}, o);
    for (std::size_t l = 0; l < 2; ++l) {
      CHECK(grid[t][l].theta_pre == thetas[t]);
      CHECK(grid[t][l].i_rand == direct[l].i_rand);
      CHECK(grid[t][l].i_local == direct[l].i_local);
    }
  }
}

TEST_CASE("flat layers raise TooManyDegenerate from the raw expectations") {
  const auto net = fixture::linear_net({1e-14 * CounterRng(11).normal_matrix(32, 64)});
  auto o = options(4);
  o.theta_pre = 0.01;
  CHECK_THROWS_AS(i_rand(net, 1, o), TooManyDegenerate);
  const auto r = distortion_score(net, 1, o);
  CHECK(r.degenerate);
  CHECK(std::isnan(r.i_rand));
  CHECK(r.skipped_rand == 4);
}

TEST_CASE("argument checks") {
  const auto net = build_mlp(fixture::tanh_spec(12, 8, 2, 1.0));
  CHECK_THROWS_AS(distortion_score(net, 1, options(0)), InputError);
  auto o = options(5);
  o.epsilon = 0.0;
  CHECK_THROWS_AS(i_local(net, 1, o), InputError);
  CHECK_THROWS_AS(distortion_score(net, 3, options(5)), IndexError);
  CHECK_THROWS_AS(layer_sweep(net, {}, options(5)), InputError);
}
