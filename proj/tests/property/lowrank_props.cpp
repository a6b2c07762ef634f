#include "fixtures.hpp"
#include "latdim/lowrank.hpp"

#include <doctest.h>

#include <cmath>

using namespace latdim;

TEST_CASE("nnp closed form passes its certificate") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const CounterRng r(s);
    const Eigen::Index rows = 3 + static_cast<Eigen::Index>(s % 5), cols = 2 + static_cast<Eigen::Index>(s % 7);
    const Matrix m = r.normal_matrix(rows, cols);
    const double gamma = 0.05 + 2.0 * r.substream(1).uniform(0);
    CHECK(nnp_optimality_check(m, gamma, nnp_denoise(m, gamma)).pass);
  }
}

TEST_CASE("pcp meets its residual tolerance when it reports convergence") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto inst = fixture::pcp_instance(100 + s, 40, 3);
    const Matrix m = inst.low_rank + inst.sparse;
    const auto res = pcp_decompose(m, 1.0 / std::sqrt(40.0));
    REQUIRE(res.converged);
    CHECK(res.primal_residual <= 1e-7 * m.norm());
    CHECK(std::abs((m - res.low_rank - res.sparse).norm() - res.primal_residual) <= 1e-12 * m.norm());
  }
}

TEST_CASE("corruption ratio grows along the sweep") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto net = build_mlp(fixture::tanh_spec(s, 48, 8, 0.8));
    const Matrix j = net.jacobian(CounterRng(s, 9).normal_vector(48), 8);
    const auto rows = sparsity_sweep(j.transpose() * j, {1, 2, 4, 8, 16});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].corruption_ratio >= rows[i - 1].corruption_ratio);
    for (const auto& row : rows) CHECK(row.corruption_ratio <= 1.5);
  }
}
