#pragma once

#include "latdim/errors.hpp"
#include "latdim/linalg.hpp"
#include "latdim/pseudorank.hpp"
#include "latdim/synth_net.hpp"

#include <cstdint>
#include <vector>

namespace latdim {

// Ordered Local Basis at w = f(z): the left singular vectors of the
// Jacobian of the layer-`layer` subnetwork, strongest first.
struct LocalBasisResult {
  Vector base_z;
  Vector base_w;
  SvdFactors factors;
  std::size_t layer = 0;
};

LocalBasisResult local_basis(const MlpNetwork& net, const Vector& z, std::size_t layer);

// Raised when the rank estimator returns 0 at a probe point.
class FlatPoint : public ComputeError {
 public:
  FlatPoint(const std::string& what, RankEstimate estimate) : ComputeError(what), estimate_(std::move(estimate)) {}
  const RankEstimate& estimate() const { return estimate_; }

 private:
  RankEstimate estimate_;
};

struct IntrinsicTangent {
  TangentFrame frame;
  RankEstimate estimate;
};

// First K Local Basis vectors, with K the pseudorank of the Jacobian
// (n = input dimension). Throws FlatPoint when K = 0.
IntrinsicTangent intrinsic_tangent(const MlpNetwork& net, const Vector& z, std::size_t layer, double alpha,
                                   double theta_pre);

// Same, for an already factored Jacobian with n_samples = its input dim.
IntrinsicTangent intrinsic_tangent_from_factors(const SvdFactors& factors, double n_samples, double alpha,
                                                double theta_pre);

struct PcaBasis {
  TangentFrame components;  // ambient x ambient, by decreasing variance
  Vector variances;
};

// PCA of w = f(z) over num_samples standard-normal z (1/(N-1) covariance).
// Throws DegenerateSamples when every sample coincides.
PcaBasis global_basis_pca(const MlpNetwork& net, std::size_t layer, std::size_t num_samples, std::uint64_t rng_seed);

struct CompatResult {
  double mean_residual = 0.0;  // mean ||(I - P_T) d|| over usable probes
  std::size_t probes_used = 0;
  std::size_t skipped = 0;  // FlatPoint probes
};

// How far a fixed unit direction sits outside the intrinsic tangent spaces
// of randomly drawn points: 0 means always tangent, 1 always normal.
CompatResult global_compat_residual(const MlpNetwork& net, std::size_t layer, const Vector& global_dir,
                                    std::size_t probes, double alpha, double theta_pre, std::uint64_t rng_seed);

struct AdamOptions {
  double lr = 0.005;
  int iters = 1000;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct OffManifoldResult {
  std::size_t axis_index = 0;  // 1-based k
  double intensity = 0.0;      // c
  double final_loss = 0.0;     // best ||w_ptb - f(z)||^2 seen
  std::vector<double> loss_trace;  // running best loss per iteration
  int iterations = 0;
};

// Perturbs w_init = f(z_init) by c along the k-th Local Basis vector and
// pulls z back toward the perturbed point with Adam on the squared error,
// starting at z_init. Stops early once the loss is exactly zero.
OffManifoldResult off_manifold(const MlpNetwork& net, std::size_t layer, const Vector& z_init, std::size_t k,
                               double c, const AdamOptions& options = {});

struct OffManifoldCell {
  std::size_t k = 0;
  double c = 0.0;
  OffManifoldResult result;
  std::string error;  // empty on success
};

// One off_manifold run per (k, c), k-major. Errors are recorded per cell.
std::vector<OffManifoldCell> off_manifold_sweep(const MlpNetwork& net, std::size_t layer, const Vector& z_init,
                                                const std::vector<std::size_t>& ks, const std::vector<double>& cs,
                                                const AdamOptions& options = {});

}  // namespace latdim
