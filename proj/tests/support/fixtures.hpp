#pragma once

#include "latdim/linalg.hpp"
#include "latdim/random.hpp"
#include "latdim/synth_net.hpp"

#include <cstdint>
#include <vector>

namespace fixture {

using latdim::CounterRng;
using latdim::Matrix;
using latdim::Vector;

// J = U diag(s) V^T + noise * N with rank-`rank` U, V and s in [5, 15).
inline Matrix planted_jacobian(std::uint64_t seed, Eigen::Index rows = 128, Eigen::Index cols = 512,
                               Eigen::Index rank = 10, double noise = 0.05) {
  const CounterRng r(seed);
  const Matrix u = latdim::orthonormalize(r.substream(1).normal_matrix(rows, rank)).basis();
  const Matrix v = latdim::orthonormalize(r.substream(2).normal_matrix(cols, rank)).basis();
  Vector s(rank);
  for (Eigen::Index i = 0; i < rank; ++i) s(i) = 5.0 + 10.0 * r.substream(3).uniform(static_cast<std::uint64_t>(i));
  return u * s.asDiagonal() * v.transpose() + noise * r.substream(4).normal_matrix(rows, cols);
}

struct PcpInstance {
  Matrix low_rank;
  Matrix sparse;
};

// 60x60 rank-5 product plus 2% entries of magnitude 10.
inline PcpInstance pcp_instance(std::uint64_t seed, Eigen::Index n = 60, Eigen::Index rank = 5,
                                double density = 0.02, double magnitude = 10.0) {
  const CounterRng r(seed);
  PcpInstance inst;
  inst.low_rank = r.normal_matrix(n, rank) * r.normal_matrix(n, rank, 1000).transpose();
  inst.sparse = Matrix::Zero(n, n);
  const CounterRng where = r.substream(1), sign = r.substream(2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto idx = static_cast<std::uint64_t>(i * n + j);
      if (where.uniform(idx) <= density) inst.sparse(i, j) = sign.uniform(idx) < 0.5 ? -magnitude : magnitude;
    }
  }
  return inst;
}

// Affine nets: leaky ReLU with slope 1 is the identity.
inline latdim::MlpNetwork linear_net(const std::vector<Matrix>& weights) {
  latdim::MlpSpec spec;
  spec.input_dim = static_cast<std::size_t>(weights.front().cols());
  spec.layer_dims.clear();
  std::vector<Vector> biases;
  for (const auto& w : weights) {
    spec.layer_dims.push_back(static_cast<std::size_t>(w.rows()));
    biases.push_back(Vector::Zero(w.rows()));
  }
  spec.activation = latdim::Activation::LeakyRelu;
  spec.leaky_slope = 1.0;
  return latdim::MlpNetwork(spec, weights, biases);
}

inline latdim::MlpSpec tanh_spec(std::uint64_t seed, std::size_t width, std::size_t depth, double scale) {
  latdim::MlpSpec spec;
  spec.input_dim = width;
  spec.layer_dims.assign(depth, width);
  spec.activation = latdim::Activation::Tanh;
  spec.weight_scale = scale;
  spec.seed = seed;
  return spec;
}

}  // namespace fixture

namespace fixture {

struct PlantedLayer {
  latdim::Matrix weight;
  latdim::Matrix column_space;  // ambient x rank, orthonormal
};

// W = U diag(10, 9.5, ...) V^T + floor * N: rank-`rank` signal over a tiny
// full-rank floor, so the spectrum has a clear noise tail.
inline PlantedLayer planted_layer(std::uint64_t seed, Eigen::Index ambient, Eigen::Index input, Eigen::Index rank,
                                  double floor = 1e-8) {
  const CounterRng r(seed);
  PlantedLayer out;
  out.column_space = latdim::orthonormalize(r.substream(1).normal_matrix(ambient, rank)).basis();
  const Matrix v = latdim::orthonormalize(r.substream(2).normal_matrix(input, rank)).basis();
  Vector s(rank);
  for (Eigen::Index i = 0; i < rank; ++i) s(i) = 10.0 - 0.5 * static_cast<double>(i);
  out.weight = out.column_space * s.asDiagonal() * v.transpose() + floor * r.substream(3).normal_matrix(ambient, input);
  return out;
}

}  // namespace fixture
