#include "latdim/synth_net.hpp"

#include "latdim/errors.hpp"
#include "latdim/random.hpp"

#include <cmath>

namespace latdim {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::Tanh:
      return "tanh";
    case Activation::Softplus:
      return "softplus";
    case Activation::LeakyRelu:
      return "leaky_relu";
  }
  return "unknown";
}

Activation parse_activation(const std::string& name) {
  if (name == "tanh") return Activation::Tanh;
  if (name == "softplus") return Activation::Softplus;
  if (name == "leaky_relu") return Activation::LeakyRelu;
  throw ParseError("unknown activation '" + name + "'");
}

std::size_t MlpSpec::output_dim(std::size_t layer) const {
  if (layer < 1 || layer > layer_dims.size()) {
    throw IndexError("layer " + std::to_string(layer) + " out of range 1.." + std::to_string(layer_dims.size()));
  }
  return layer_dims[layer - 1];
}

void MlpSpec::validate() const {
  if (input_dim < 1) throw InputError("mlp spec: input_dim must be >= 1");
  if (layer_dims.empty()) throw InputError("mlp spec: at least one layer required");
  for (std::size_t d : layer_dims) {
    if (d < 1) throw InputError("mlp spec: layer dims must be >= 1");
  }
  if (!(leaky_slope > 0.0 && leaky_slope <= 1.0)) {
    throw InputError("mlp spec: leaky slope must lie in (0, 1]");
  }
  if (!(weight_scale > 0.0) || !std::isfinite(weight_scale)) {
    throw InputError("mlp spec: weight_scale must be positive");
  }
}

MlpNetwork::MlpNetwork(MlpSpec spec, std::vector<Matrix> weights, std::vector<Vector> biases)
    : spec_(std::move(spec)), weights_(std::move(weights)), biases_(std::move(biases)) {
  spec_.validate();
  if (weights_.size() != spec_.depth() || biases_.size() != spec_.depth()) {
    throw DimensionMismatch("mlp: parameter count does not match spec depth");
  }
  std::size_t fan_in = spec_.input_dim;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    const auto rows = static_cast<Eigen::Index>(spec_.layer_dims[l]);
    if (weights_[l].rows() != rows || weights_[l].cols() != static_cast<Eigen::Index>(fan_in) ||
        biases_[l].size() != rows) {
      throw DimensionMismatch("mlp: layer " + std::to_string(l + 1) + " parameter shape mismatch");
    }
    require_valid(weights_[l], "mlp weight");
    fan_in = spec_.layer_dims[l];
  }
}

std::size_t MlpNetwork::output_dim(std::size_t layer) const {
  if (layer == depth() && readout_.size()) return static_cast<std::size_t>(readout_.rows());
  return spec_.output_dim(layer);
}

const Matrix& MlpNetwork::weight(std::size_t layer) const {
  spec_.output_dim(layer);
  return weights_[layer - 1];
}

const Vector& MlpNetwork::bias(std::size_t layer) const {
  spec_.output_dim(layer);
  return biases_[layer - 1];
}

MlpNetwork MlpNetwork::with_readout(Matrix readout) const {
  require_valid(readout, "readout");
  if (readout.cols() != static_cast<Eigen::Index>(spec_.layer_dims.back())) {
    throw DimensionMismatch("readout: column count must equal the last layer width");
  }
  MlpNetwork copy = *this;
  copy.readout_ = std::move(readout);
  return copy;
}

double MlpNetwork::act(double x) const {
  switch (spec_.activation) {
    case Activation::Tanh:
      return std::tanh(x);
    case Activation::Softplus:
      return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
    case Activation::LeakyRelu:
      return x > 0.0 ? x : spec_.leaky_slope * x;
  }
  return x;
}

// leaky_relu uses the slope as its derivative at exactly zero.
double MlpNetwork::act_prime(double x) const {
  switch (spec_.activation) {
    case Activation::Tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::Softplus:
      return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
    case Activation::LeakyRelu:
      return x > 0.0 ? 1.0 : spec_.leaky_slope;
  }
  return 1.0;
}

void MlpNetwork::check_call(const Vector& z, std::size_t upto_layer) const {
  if (upto_layer < 1 || upto_layer > depth()) {
    throw IndexError("layer " + std::to_string(upto_layer) + " out of range 1.." + std::to_string(depth()));
  }
  if (z.size() != static_cast<Eigen::Index>(spec_.input_dim)) {
    throw DimensionMismatch("mlp: input has length " + std::to_string(z.size()) + ", expected " +
                            std::to_string(spec_.input_dim));
  }
  if (!z.allFinite()) throw InvalidMatrix("mlp: non-finite input");
}

Vector MlpNetwork::forward(const Vector& z, std::size_t upto_layer) const {
  check_call(z, upto_layer);
  Vector x = z;
  for (std::size_t l = 0; l < upto_layer; ++l) {
    x = (weights_[l] * x + biases_[l]).unaryExpr([this](double v) { return act(v); });
  }
  if (upto_layer == depth() && readout_.size()) x = readout_ * x;
  return x;
}

Matrix MlpNetwork::jacobian(const Vector& z, std::size_t upto_layer) const {
  check_call(z, upto_layer);
  Vector x = z;
  Matrix jac = Matrix::Identity(z.size(), z.size());
  for (std::size_t l = 0; l < upto_layer; ++l) {
    const Vector pre = weights_[l] * x + biases_[l];
    const Vector slope = pre.unaryExpr([this](double v) { return act_prime(v); });
    jac = slope.asDiagonal() * (weights_[l] * jac);
    x = pre.unaryExpr([this](double v) { return act(v); });
  }
  if (upto_layer == depth() && readout_.size()) jac = readout_ * jac;
  return jac;
}

std::vector<Matrix> MlpNetwork::layer_jacobians(const Vector& z) const {
  check_call(z, depth());
  std::vector<Matrix> out;
  out.reserve(depth());
  Vector x = z;
  Matrix jac = Matrix::Identity(z.size(), z.size());
  for (std::size_t l = 0; l < depth(); ++l) {
    const Vector pre = weights_[l] * x + biases_[l];
    const Vector slope = pre.unaryExpr([this](double v) { return act_prime(v); });
    jac = slope.asDiagonal() * (weights_[l] * jac);
    x = pre.unaryExpr([this](double v) { return act(v); });
    out.push_back(jac);
  }
  if (readout_.size()) out.back() = readout_ * out.back();
  return out;
}

Vector MlpNetwork::vjp(const Vector& z, std::size_t upto_layer, const Vector& cotangent) const {
  check_call(z, upto_layer);
  if (cotangent.size() != static_cast<Eigen::Index>(output_dim(upto_layer))) {
    throw DimensionMismatch("vjp: cotangent length mismatch");
  }
  std::vector<Vector> slopes;
  slopes.reserve(upto_layer);
  Vector x = z;
  for (std::size_t l = 0; l < upto_layer; ++l) {
    const Vector pre = weights_[l] * x + biases_[l];
    slopes.push_back(pre.unaryExpr([this](double v) { return act_prime(v); }));
    x = pre.unaryExpr([this](double v) { return act(v); });
  }
  Vector g = (upto_layer == depth() && readout_.size()) ? Vector(readout_.transpose() * cotangent) : cotangent;
  for (std::size_t l = upto_layer; l-- > 0;) {
    g = weights_[l].transpose() * g.cwiseProduct(slopes[l]);
  }
  return g;
}

MlpNetwork build_mlp(const MlpSpec& spec) {
  spec.validate();
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
  std::size_t fan_in = spec.input_dim;
  for (std::size_t l = 0; l < spec.depth(); ++l) {
    const CounterRng rng(spec.seed, l + 1);
    const auto rows = static_cast<Eigen::Index>(spec.layer_dims[l]);
    const auto cols = static_cast<Eigen::Index>(fan_in);
    weights.push_back(rng.normal_matrix(rows, cols) * (spec.weight_scale / std::sqrt(static_cast<double>(fan_in))));
    biases.push_back(Vector::Zero(rows));
    fan_in = spec.layer_dims[l];
  }
  return MlpNetwork(spec, std::move(weights), std::move(biases));
}

double variation_intensity(const MlpNetwork& g, const Vector& w, const Vector& direction, double step) {
  if (direction.size() != w.size()) throw DimensionMismatch("variation_intensity: direction length mismatch");
  if (!(std::abs(direction.norm() - 1.0) <= 1e-8)) {
    throw InvalidDirection("variation_intensity: direction must have unit norm");
  }
  if (!(step > 0.0)) throw OutOfRange("variation_intensity: step must be positive");
  return (g.forward(w + step * direction) - g.forward(w)).norm() / step;
}

}  // namespace latdim
