#pragma once

#include "latdim/synth_net.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace latdim {

// Run configuration in a plain key=value text format: UTF-8, one pair per
// line, '#' starts a comment, surrounding whitespace ignored. Unknown keys
// and out-of-range values are rejected with ParseError at parse time.
//
// Keys:
//   input_dim, layer_dims (comma list), activation, leaky_slope,
//   weight_scale, net_seed       network architecture
//   jacobian                     path to a .jmat or .csv Jacobian
//   layers (comma list), layer   layer selection
//   alpha, theta_pre, epsilon, num_pairs
//   seed, z_seed                 sampling seeds
//   output                       output path
struct RunConfig {
  std::optional<std::size_t> input_dim;
  std::optional<std::vector<std::size_t>> layer_dims;
  std::optional<Activation> activation;
  std::optional<double> leaky_slope;
  std::optional<double> weight_scale;
  std::optional<std::uint64_t> net_seed;
  std::optional<std::string> jacobian;
  std::optional<std::vector<std::size_t>> layers;
  std::optional<std::size_t> layer;
  std::optional<double> alpha;
  std::optional<double> theta_pre;
  std::optional<double> epsilon;
  std::optional<std::size_t> num_pairs;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> z_seed;
  std::optional<std::string> output;

  bool has_net() const { return input_dim || layer_dims || activation || net_seed || weight_scale || leaky_slope; }
  // Network spec with MlpSpec defaults for any key not given.
  MlpSpec mlp_spec() const;
};

RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

// Network keys of a RunConfig, one per line, in a fixed order.
std::string format_net_config(const MlpSpec& spec);

// Field parsers shared with the command line.
std::vector<std::size_t> parse_count_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

}  // namespace latdim
