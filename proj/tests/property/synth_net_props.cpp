#include "fixtures.hpp"
#include "latdim/synth_net.hpp"

#include <doctest.h>

using namespace latdim;

TEST_CASE("spectral tail is shorter at layer 8 than at layer 2") {
  // Default 8 x 512 tanh stand-in, weight_scale 0.8.
  int shorter = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    MlpSpec spec;
    spec.seed = s;
    const auto js = build_mlp(spec).layer_jacobians(CounterRng(s, 7).normal_vector(512));
    const Vector early = singular_values(js[1]);
    const Vector late = singular_values(js[7]);
    shorter += late(149) / late(0) < early(149) / early(0);
  }
  MESSAGE("sigma_150/sigma_1 smaller at layer 8 in " << shorter << "/50 seeds");
  CHECK(shorter >= 45);
}

TEST_CASE("intensity along the strongest input direction beats the 500th") {
  // g: R^512 -> R^3072. Directions are right singular vectors of g's
  // Jacobian at w, where the finite-difference intensity tracks sigma_i.
  MlpSpec spec;
  spec.input_dim = 512;
  spec.layer_dims = {3072};
  spec.seed = 77;
  spec.weight_scale = 1.0;
  const auto g = build_mlp(spec);
  int ordered = 0;
  for (std::uint64_t p = 0; p < 100; ++p) {
    const Vector w = CounterRng(p, 4).normal_vector(512);
    const auto f = svd(g.jacobian(w, 1));
    ordered += variation_intensity(g, w, f.right.col(0)) > variation_intensity(g, w, f.right.col(499));
  }
  CHECK(ordered >= 95);
}
