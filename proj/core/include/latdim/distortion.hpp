#pragma once

#include "latdim/synth_net.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace latdim {

struct DistortionOptions {
  std::size_t num_pairs = 1000;
  double epsilon = 0.1;
  double alpha = 0.1;
  double theta_pre = 0.005;
  std::uint64_t seed = 0;
  bool keep_per_pair = false;
};

// Mean normalized geodesic distance between intrinsic tangent spaces over a
// set of point pairs. Pairs where either point is flat (estimated dimension
// 0) are skipped; distances[i] is NaN for a skipped pair.
struct InconsistencySample {
  double mean = 0.0;
  std::vector<double> distances;
  std::size_t skipped = 0;
};

// Pairs of independent standard-normal latents.
InconsistencySample i_rand(const MlpNetwork& net, std::size_t layer, const DistortionOptions& options);

// z1 standard normal, z2 = z1 + epsilon * u with u uniform on the sphere.
InconsistencySample i_local(const MlpNetwork& net, std::size_t layer, const DistortionOptions& options);

inline constexpr double kLocalInconsistencyFloor = 1e-9;

struct DistortionReport {
  std::size_t layer = 0;
  double i_rand = 0.0;   // NaN when more than half of the pairs were skipped
  double i_local = 0.0;
  std::optional<double> score;  // i_rand / i_local, absent when degenerate
  std::size_t num_pairs = 0;
  std::size_t skipped_rand = 0;
  std::size_t skipped_local = 0;
  double epsilon = 0.0;
  double theta_pre = 0.0;
  double alpha = 0.0;
  bool degenerate = false;
  std::string note;  // reason when degenerate
  std::vector<double> per_pair_rand;
  std::vector<double> per_pair_local;
};

// D = I_rand / I_local. The two expectations use independent sub-streams of
// options.seed. A report with i_local below kLocalInconsistencyFloor, or with
// more than half of either pair set flat, is marked degenerate.
DistortionReport distortion_score(const MlpNetwork& net, std::size_t layer, const DistortionOptions& options);

// One report per layer. Every layer sees the same latent draws.
std::vector<DistortionReport> layer_sweep(const MlpNetwork& net, const std::vector<std::size_t>& layers,
                                          const DistortionOptions& options);

// layer_sweep for several theta_pre values at once; result[t][l] matches
// layer_sweep with options.theta_pre = thetas[t]. The SVD at each sample is
// shared across thetas.
std::vector<std::vector<DistortionReport>> theta_layer_sweep(const MlpNetwork& net,
                                                             const std::vector<std::size_t>& layers,
                                                             const std::vector<double>& thetas,
                                                             const DistortionOptions& options);

}  // namespace latdim
