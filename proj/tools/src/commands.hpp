#pragma once

#include "latdim/config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace latdim::cli {

// Flags shared by every subcommand. Unset values fall back to the config
// file, then to built-in defaults.
struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string config;
};

struct NetFlags {
  std::string net;  // key=value file holding the network keys
  std::optional<std::size_t> layer;
  std::optional<std::uint64_t> z_seed;
};

struct RankFlags {
  std::string jacobian;
  NetFlags net;
  std::optional<double> alpha;
  std::optional<double> theta_pre;
  std::optional<double> n_override;
};

struct DistortionFlags {
  NetFlags net;
  std::string layers;
  std::optional<std::size_t> pairs;
  std::optional<double> epsilon;
  std::optional<double> alpha;
  std::optional<double> theta_pre;
  std::string raw;
};

struct OffManifoldFlags {
  NetFlags net;
  std::string k_range;
  std::string c_list = "2";
  double lr = 0.005;
  int iters = 1000;
  std::optional<double> alpha;
  std::optional<double> theta_pre;
};

struct LowRankFlags {
  std::string jacobian;
  NetFlags net;
  std::string n_grid = "1,2,4,8,16";
  double tol = 1e-7;
  int max_iter = 1000;
};

struct GenNetFlags {
  std::optional<std::size_t> input_dim;
  std::string layer_dims;
  std::string activation;
  std::optional<double> weight_scale;
  std::optional<double> leaky_slope;
  std::string vectors;
  std::size_t probes = 4;
};

struct MetricsFlags {
  std::size_t dim = 50;
  std::size_t ambient = 512;
};

int run_rank(const GlobalFlags& g, const RankFlags& f);
int run_distortion(const GlobalFlags& g, const DistortionFlags& f);
int run_offmanifold(const GlobalFlags& g, const OffManifoldFlags& f);
int run_lowrank(const GlobalFlags& g, const LowRankFlags& f);
int run_gen_net(const GlobalFlags& g, const GenNetFlags& f);
int run_metrics(const GlobalFlags& g, const MetricsFlags& f);

}  // namespace latdim::cli
