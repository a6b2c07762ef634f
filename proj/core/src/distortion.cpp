#include "latdim/distortion.hpp"

#include "latdim/errors.hpp"
#include "latdim/linalg.hpp"
#include "latdim/pseudorank.hpp"
#include "latdim/random.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace latdim {

namespace {

enum class PairKind { Random, Local };

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
// Output slots are indexed by i, so results do not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Left singular vectors and per-theta pseudoranks at one latent sample.
struct PointTangents {
  std::vector<Matrix> left;                      // [layer]
  std::vector<std::vector<std::size_t>> ranks;  // [layer][theta]
};

PointTangents evaluate_point(const MlpNetwork& net, const Vector& z, const std::vector<std::size_t>& layers,
                             const std::vector<double>& thetas, double alpha) {
  const std::vector<Matrix> jacobians = net.layer_jacobians(z);
  const auto n = static_cast<double>(net.input_dim());
  PointTangents out;
  for (std::size_t layer : layers) {
    SvdFactors f = svd(jacobians[layer - 1]);
    std::vector<std::size_t> ranks;
    ranks.reserve(thetas.size());
    for (double theta : thetas) {
      ranks.push_back(estimate_rank_from_singular_values(f.singular_values, n, alpha, theta).rank);
    }
    out.left.push_back(std::move(f.left));
    out.ranks.push_back(std::move(ranks));
  }
  return out;
}

// Both tangent spaces are truncated to their leading k = min(k1, k2) Local
// Basis vectors before measuring, so the compared subspaces share a dimension.
double pair_distance(const PointTangents& a, const PointTangents& b, std::size_t li, std::size_t ti) {
  const std::size_t k = std::min(a.ranks[li][ti], b.ranks[li][ti]);
  if (k == 0) return kNaN;
  const auto cols = static_cast<Eigen::Index>(k);
  return geodesic_distance_normalized(TangentFrame(a.left[li].leftCols(cols)), TangentFrame(b.left[li].leftCols(cols)));
}

// distances[theta][layer][pair]
using DistanceTable = std::vector<std::vector<std::vector<double>>>;

DistanceTable sample_distances(const MlpNetwork& net, const std::vector<std::size_t>& layers,
                               const std::vector<double>& thetas, const DistortionOptions& options, PairKind kind) {
  if (options.num_pairs < 1) throw InputError("distortion: num_pairs must be >= 1");
  if (kind == PairKind::Local && !(options.epsilon > 0.0)) throw InputError("distortion: epsilon must be positive");
  if (layers.empty() || thetas.empty()) throw InputError("distortion: empty layer or theta list");
  for (std::size_t layer : layers) {
    if (layer < 1 || layer > net.depth()) throw IndexError("distortion: layer " + std::to_string(layer) + " out of range");
  }

  const auto d_z = static_cast<Eigen::Index>(net.input_dim());
  const auto stride = static_cast<std::uint64_t>(d_z);
  const CounterRng rng = CounterRng(options.seed).substream(kind == PairKind::Random ? 1 : 2);

  DistanceTable table(thetas.size(), std::vector<std::vector<double>>(layers.size(), std::vector<double>(options.num_pairs)));
  parallel_for(options.num_pairs, [&](std::size_t i) {
    const Vector z1 = rng.normal_vector(d_z, 2 * i * stride);
    Vector z2;
    if (kind == PairKind::Random) {
      z2 = rng.normal_vector(d_z, (2 * i + 1) * stride);
    } else {
      z2 = z1 + options.epsilon * rng.unit_vector(d_z, (2 * i + 1) * stride);
    }
    const PointTangents a = evaluate_point(net, z1, layers, thetas, options.alpha);
    const PointTangents b = evaluate_point(net, z2, layers, thetas, options.alpha);
    for (std::size_t t = 0; t < thetas.size(); ++t) {
      for (std::size_t l = 0; l < layers.size(); ++l) table[t][l][i] = pair_distance(a, b, l, t);
    }
  });
  return table;
}

InconsistencySample summarize(std::vector<double> distances, const char* which) {
  InconsistencySample out;
  double sum = 0.0;
  std::size_t used = 0;
  for (double d : distances) {
    if (std::isnan(d)) {
      ++out.skipped;
    } else {
      sum += d;
      ++used;
    }
  }
  if (2 * out.skipped > distances.size()) {
    throw TooManyDegenerate(std::string(which) + ": " + std::to_string(out.skipped) + " of " +
                            std::to_string(distances.size()) + " pairs hit a flat point");
  }
  out.mean = sum / static_cast<double>(used);
  out.distances = std::move(distances);
  return out;
}

DistortionReport make_report(std::size_t layer, std::vector<double> rand_d, std::vector<double> local_d,
                             const DistortionOptions& options, double theta) {
  DistortionReport r;
  r.layer = layer;
  r.num_pairs = options.num_pairs;
  r.epsilon = options.epsilon;
  r.theta_pre = theta;
  r.alpha = options.alpha;
  for (double d : rand_d) r.skipped_rand += std::isnan(d) ? 1 : 0;
  for (double d : local_d) r.skipped_local += std::isnan(d) ? 1 : 0;
  if (options.keep_per_pair) {
    r.per_pair_rand = rand_d;
    r.per_pair_local = local_d;
  }
  auto mean_or_nan = [&r](std::vector<double> d, const char* which) {
    try {
      return summarize(std::move(d), which).mean;
    } catch (const TooManyDegenerate& e) {
      r.degenerate = true;
      r.note = e.what();
      return kNaN;
    }
  };
  r.i_rand = mean_or_nan(std::move(rand_d), "i_rand");
  r.i_local = mean_or_nan(std::move(local_d), "i_local");
  if (r.degenerate) return r;
  if (r.i_local < kLocalInconsistencyFloor) {
    r.degenerate = true;
    r.note = "i_local below floor (flat manifold)";
  } else {
    r.score = r.i_rand / r.i_local;
  }
  return r;
}

}  // namespace

InconsistencySample i_rand(const MlpNetwork& net, std::size_t layer, const DistortionOptions& options) {
  auto table = sample_distances(net, {layer}, {options.theta_pre}, options, PairKind::Random);
  return summarize(std::move(table[0][0]), "i_rand");
}

InconsistencySample i_local(const MlpNetwork& net, std::size_t layer, const DistortionOptions& options) {
  auto table = sample_distances(net, {layer}, {options.theta_pre}, options, PairKind::Local);
  return summarize(std::move(table[0][0]), "i_local");
}

std::vector<std::vector<DistortionReport>> theta_layer_sweep(const MlpNetwork& net,
                                                             const std::vector<std::size_t>& layers,
                                                             const std::vector<double>& thetas,
                                                             const DistortionOptions& options) {
  auto rand_table = sample_distances(net, layers, thetas, options, PairKind::Random);
  auto local_table = sample_distances(net, layers, thetas, options, PairKind::Local);
  std::vector<std::vector<DistortionReport>> out(thetas.size());
  for (std::size_t t = 0; t < thetas.size(); ++t) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
      out[t].push_back(make_report(layers[l], std::move(rand_table[t][l]), std::move(local_table[t][l]), options, thetas[t]));
    }
  }
  return out;
}

std::vector<DistortionReport> layer_sweep(const MlpNetwork& net, const std::vector<std::size_t>& layers,
                                          const DistortionOptions& options) {
  return theta_layer_sweep(net, layers, {options.theta_pre}, options)[0];
}

DistortionReport distortion_score(const MlpNetwork& net, std::size_t layer, const DistortionOptions& options) {
  return layer_sweep(net, {layer}, options)[0];
}

}  // namespace latdim
