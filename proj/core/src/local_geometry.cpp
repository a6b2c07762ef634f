#include "latdim/local_geometry.hpp"

#include "latdim/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace latdim {

LocalBasisResult local_basis(const MlpNetwork& net, const Vector& z, std::size_t layer) {
  LocalBasisResult out;
  out.base_z = z;
  out.base_w = net.forward(z, layer);
  out.factors = svd(net.jacobian(z, layer));
  out.layer = layer;
  return out;
}

IntrinsicTangent intrinsic_tangent_from_factors(const SvdFactors& factors, double n_samples, double alpha,
                                                double theta_pre) {
  RankEstimate est = estimate_rank_from_singular_values(factors.singular_values, n_samples, alpha, theta_pre);
  if (est.rank == 0) {
    throw FlatPoint("intrinsic_tangent: estimated dimension is 0", std::move(est));
  }
  TangentFrame frame(factors.left.leftCols(static_cast<Eigen::Index>(est.rank)));
  return {std::move(frame), std::move(est)};
}

IntrinsicTangent intrinsic_tangent(const MlpNetwork& net, const Vector& z, std::size_t layer, double alpha,
                                   double theta_pre) {
  const SvdFactors factors = svd(net.jacobian(z, layer));
  return intrinsic_tangent_from_factors(factors, static_cast<double>(net.input_dim()), alpha, theta_pre);
}

PcaBasis global_basis_pca(const MlpNetwork& net, std::size_t layer, std::size_t num_samples, std::uint64_t rng_seed) {
  if (num_samples < 2) throw InputError("global_basis_pca: need at least 2 samples");
  const auto dim = static_cast<Eigen::Index>(net.output_dim(layer));
  const auto d_z = static_cast<Eigen::Index>(net.input_dim());
  const CounterRng rng(rng_seed);

  Matrix samples(static_cast<Eigen::Index>(num_samples), dim);
  for (std::size_t i = 0; i < num_samples; ++i) {
    const Vector z = rng.normal_vector(d_z, static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(d_z));
    samples.row(static_cast<Eigen::Index>(i)) = net.forward(z, layer).transpose();
  }
  const Eigen::RowVectorXd mean = samples.colwise().mean();
  samples.rowwise() -= mean;
  if (samples.cwiseAbs().maxCoeff() == 0.0) {
    throw DegenerateSamples("global_basis_pca: all samples coincide");
  }
  const Matrix cov = samples.transpose() * samples / static_cast<double>(num_samples - 1);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  // Eigen sorts ascending; reverse to decreasing variance.
  Matrix vecs = eig.eigenvectors().rowwise().reverse();
  Vector vars = eig.eigenvalues().reverse().cwiseMax(0.0);
  for (Eigen::Index j = 0; j < vecs.cols(); ++j) {
    Eigen::Index pivot = 0;
    vecs.col(j).cwiseAbs().maxCoeff(&pivot);
    if (vecs(pivot, j) < 0.0) vecs.col(j) *= -1.0;
  }
  return {TangentFrame(std::move(vecs)), std::move(vars)};
}

CompatResult global_compat_residual(const MlpNetwork& net, std::size_t layer, const Vector& global_dir,
                                    std::size_t probes, double alpha, double theta_pre, std::uint64_t rng_seed) {
  if (global_dir.size() != static_cast<Eigen::Index>(net.output_dim(layer))) {
    throw DimensionMismatch("global_compat_residual: direction is not in the layer's ambient space");
  }
  if (!(std::abs(global_dir.norm() - 1.0) <= 1e-8)) {
    throw InvalidDirection("global_compat_residual: direction must have unit norm");
  }
  const auto d_z = static_cast<Eigen::Index>(net.input_dim());
  const CounterRng rng(rng_seed);

  CompatResult out;
  double sum = 0.0;
  for (std::size_t i = 0; i < probes; ++i) {
    const Vector z = rng.normal_vector(d_z, static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(d_z));
    try {
      const auto tangent = intrinsic_tangent(net, z, layer, alpha, theta_pre);
      const Matrix& b = tangent.frame.basis();
      sum += (global_dir - b * (b.transpose() * global_dir)).norm();
      ++out.probes_used;
    } catch (const FlatPoint&) {
      ++out.skipped;
    }
  }
  if (out.probes_used > 0) out.mean_residual = sum / static_cast<double>(out.probes_used);
  return out;
}

OffManifoldResult off_manifold(const MlpNetwork& net, std::size_t layer, const Vector& z_init, std::size_t k,
                               double c, const AdamOptions& options) {
  const LocalBasisResult lb = local_basis(net, z_init, layer);
  if (k < 1 || k > static_cast<std::size_t>(lb.factors.left.cols())) {
    throw IndexError("off_manifold: axis " + std::to_string(k) + " out of range 1.." +
                     std::to_string(lb.factors.left.cols()));
  }
  const Vector target = lb.base_w + c * lb.factors.left.col(static_cast<Eigen::Index>(k - 1));

  OffManifoldResult out;
  out.axis_index = k;
  out.intensity = c;
  out.final_loss = std::numeric_limits<double>::infinity();

  Vector z = z_init;
  Vector m1 = Vector::Zero(z.size());
  Vector m2 = Vector::Zero(z.size());
  double decay1 = 1.0;
  double decay2 = 1.0;
  for (int t = 0; t < options.iters; ++t) {
    const Vector residual = target - net.forward(z, layer);
    const double loss = residual.squaredNorm();
    if (!std::isfinite(loss)) {
      throw OptimizerDiverged("off_manifold: non-finite loss after " + std::to_string(out.loss_trace.size()) +
                              " iterations (best loss " + std::to_string(out.final_loss) + ")");
    }
    out.final_loss = std::min(out.final_loss, loss);
    out.loss_trace.push_back(out.final_loss);
    if (loss == 0.0) break;

    const Vector grad = -2.0 * net.vjp(z, layer, residual);
    m1 = options.beta1 * m1 + (1.0 - options.beta1) * grad;
    m2 = options.beta2 * m2 + (1.0 - options.beta2) * grad.cwiseAbs2();
    decay1 *= options.beta1;
    decay2 *= options.beta2;
    const Vector m1_hat = m1 / (1.0 - decay1);
    const Vector m2_hat = m2 / (1.0 - decay2);
    z -= options.lr * (m1_hat.array() / (m2_hat.array().sqrt() + options.epsilon)).matrix();
  }
  out.iterations = static_cast<int>(out.loss_trace.size());
  return out;
}

std::vector<OffManifoldCell> off_manifold_sweep(const MlpNetwork& net, std::size_t layer, const Vector& z_init,
                                                const std::vector<std::size_t>& ks, const std::vector<double>& cs,
                                                const AdamOptions& options) {
  if (ks.empty() || cs.empty()) throw InputError("off_manifold_sweep: empty grid");
  std::vector<OffManifoldCell> cells;
  cells.reserve(ks.size() * cs.size());
  for (std::size_t k : ks) {
    for (double c : cs) {
      OffManifoldCell cell;
      cell.k = k;
      cell.c = c;
      try {
        cell.result = off_manifold(net, layer, z_init, k, c, options);
      } catch (const Error& e) {
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace latdim
