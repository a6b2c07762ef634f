#pragma once

#include "latdim/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace latdim {

enum class Activation { Tanh, Softplus, LeakyRelu };

std::string to_string(Activation a);
Activation parse_activation(const std::string& name);

// Architecture of a seeded fully connected network z -> w. Layer l maps
// layer_dims[l-1] (input_dim for l = 1) to layer_dims[l] via
// activation(W_l x + b_l).
struct MlpSpec {
  std::size_t input_dim = 512;
  std::vector<std::size_t> layer_dims = std::vector<std::size_t>(8, 512);
  Activation activation = Activation::Tanh;
  double leaky_slope = 0.2;
  std::uint64_t seed = 0;
  // Weight entries are N(0, weight_scale^2 / fan_in).
  double weight_scale = 0.8;

  std::size_t depth() const { return layer_dims.size(); }
  std::size_t output_dim(std::size_t layer) const;
  // Throws InputError on empty layers, zero dims, bad slope or scale.
  void validate() const;
};

class MlpNetwork {
 public:
  // Explicit parameters; shapes are checked against spec.
  MlpNetwork(MlpSpec spec, std::vector<Matrix> weights, std::vector<Vector> biases);

  const MlpSpec& spec() const { return spec_; }
  std::size_t depth() const { return weights_.size(); }
  std::size_t input_dim() const { return spec_.input_dim; }
  std::size_t output_dim(std::size_t layer) const;
  const Matrix& weight(std::size_t layer) const;  // 1-based
  const Vector& bias(std::size_t layer) const;    // 1-based

  // A fixed linear map applied after the last layer's activation. Only the
  // full-depth output (upto_layer == depth()) sees it.
  MlpNetwork with_readout(Matrix readout) const;
  const Matrix* readout() const { return readout_.size() ? &readout_ : nullptr; }

  // Output of the subnetwork made of layers 1..upto_layer.
  Vector forward(const Vector& z, std::size_t upto_layer) const;
  Vector forward(const Vector& z) const { return forward(z, depth()); }

  // d forward(z, upto_layer) / dz, an output_dim(upto_layer) x input_dim matrix.
  Matrix jacobian(const Vector& z, std::size_t upto_layer) const;

  // Jacobians of every truncation 1..depth() from one forward pass.
  std::vector<Matrix> layer_jacobians(const Vector& z) const;

  // Vector-Jacobian product J(z)^T cotangent for the truncation at upto_layer.
  Vector vjp(const Vector& z, std::size_t upto_layer, const Vector& cotangent) const;

 private:
  void check_call(const Vector& z, std::size_t upto_layer) const;
  double act(double x) const;
  double act_prime(double x) const;

  MlpSpec spec_;
  std::vector<Matrix> weights_;
  std::vector<Vector> biases_;
  Matrix readout_;
};

// Seeded parameters: entry (r, c) of layer l is weight_scale / sqrt(fan_in)
// times a standard normal keyed by (seed, l, r * cols + c). Biases are zero.
MlpNetwork build_mlp(const MlpSpec& spec);

// Finite-difference speed of g along a unit direction:
//   ||g(w + step * direction) - g(w)|| / step.
// Throws InvalidDirection when | ||direction|| - 1 | > 1e-8.
double variation_intensity(const MlpNetwork& g, const Vector& w, const Vector& direction, double step = 0.01);

}  // namespace latdim
