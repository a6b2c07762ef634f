#include "commands.hpp"

#include "latdim/errors.hpp"

#include <CLI11.hpp>

#include <exception>
#include <filesystem>
#include <iostream>

namespace {

constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;

void add_net_flags(CLI::App* cmd, latdim::cli::NetFlags& f) {
  cmd->add_option("--net", f.net, "Network config file (key=value)");
  cmd->add_option("--layer", f.layer, "Truncation layer (default: last)");
  cmd->add_option("--z-seed", f.z_seed, "Seed of the probe latent z");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace latdim::cli;

  CLI::App app{"Local dimension and Distortion analysis of seeded networks and Jacobians", "latdim"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags global;
  app.add_option("--seed", global.seed, "Sampling / network seed");
  app.add_option("--out", global.out, "Output path (default: stdout)");
  app.add_option("--config", global.config, "Run config file (key=value)");

  RankFlags rank;
  auto* rank_cmd = app.add_subcommand("rank", "Pseudorank of a Jacobian with per-test diagnostics");
  rank_cmd->add_option("--jacobian", rank.jacobian, "Jacobian as .jmat or .csv");
  add_net_flags(rank_cmd, rank.net);
  rank_cmd->add_option("--alpha", rank.alpha, "Test level (default 0.1)");
  rank_cmd->add_option("--theta-pre", rank.theta_pre, "Preprocessing ratio (default 0.005)");
  rank_cmd->add_option("--n", rank.n_override, "Effective sample count (default: Jacobian columns)");

  DistortionFlags dist;
  auto* dist_cmd = app.add_subcommand("distortion", "Per-layer Distortion score");
  add_net_flags(dist_cmd, dist.net);
  dist_cmd->add_option("--layers", dist.layers, "Comma list of layers (default: all)");
  dist_cmd->add_option("--pairs", dist.pairs, "Point pairs per expectation (default 1000)");
  dist_cmd->add_option("--epsilon", dist.epsilon, "Local pair radius (default 0.1)");
  dist_cmd->add_option("--alpha", dist.alpha, "Test level (default 0.1)");
  dist_cmd->add_option("--theta-pre", dist.theta_pre, "Preprocessing ratio (default 0.005)");
  dist_cmd->add_option("--raw", dist.raw, "Also write per-pair distances here");

  OffManifoldFlags off;
  auto* off_cmd = app.add_subcommand("offmanifold", "Off-manifold recovery loss per Local Basis axis");
  add_net_flags(off_cmd, off.net);
  off_cmd->add_option("--k-range", off.k_range, "Axes a..b (default: all)");
  off_cmd->add_option("--c", off.c_list, "Comma list of perturbation sizes")->capture_default_str();
  off_cmd->add_option("--lr", off.lr, "Adam learning rate")->capture_default_str();
  off_cmd->add_option("--iters", off.iters, "Adam iterations")->capture_default_str();
  off_cmd->add_option("--alpha", off.alpha, "Test level for the rank marker (default 0.1)");
  off_cmd->add_option("--theta-pre", off.theta_pre, "Preprocessing ratio for the rank marker (default 0.005)");

  LowRankFlags low;
  auto* low_cmd = app.add_subcommand("lowrank", "PCP sparsity sweep on the Jacobian Gram matrix");
  low_cmd->add_option("--jacobian", low.jacobian, "Jacobian as .jmat or .csv");
  add_net_flags(low_cmd, low.net);
  low_cmd->add_option("--n-grid", low.n_grid, "Comma list of n = 1/gamma")->capture_default_str();
  low_cmd->add_option("--tol", low.tol, "Relative residual tolerance")->capture_default_str();
  low_cmd->add_option("--max-iter", low.max_iter, "Iteration cap per solve")->capture_default_str();

  GenNetFlags gen;
  auto* gen_cmd = app.add_subcommand("gen-net", "Write a network config and golden forward vectors");
  gen_cmd->add_option("--input-dim", gen.input_dim, "Latent dimension");
  gen_cmd->add_option("--layer-dims", gen.layer_dims, "Comma list of layer widths");
  gen_cmd->add_option("--activation", gen.activation, "tanh | softplus | leaky_relu");
  gen_cmd->add_option("--weight-scale", gen.weight_scale, "Weight scale");
  gen_cmd->add_option("--leaky-slope", gen.leaky_slope, "Leaky ReLU slope");
  gen_cmd->add_option("--vectors", gen.vectors, "CSV of forward outputs at seeded probes");
  gen_cmd->add_option("--probes", gen.probes, "Number of probes")->capture_default_str();

  MetricsFlags met;
  auto* met_cmd = app.add_subcommand("metrics", "Geodesic vs projection metric on subspaces sharing k0 axes");
  met_cmd->add_option("--dim", met.dim, "Subspace dimension")->capture_default_str();
  met_cmd->add_option("--ambient", met.ambient, "Ambient dimension")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*rank_cmd) return run_rank(global, rank);
    if (*dist_cmd) return run_distortion(global, dist);
    if (*off_cmd) return run_offmanifold(global, off);
    if (*low_cmd) return run_lowrank(global, low);
    if (*gen_cmd) return run_gen_net(global, gen);
    if (*met_cmd) return run_metrics(global, met);
  } catch (const latdim::InputError& e) {
    std::cerr << "latdim: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const latdim::ComputeError& e) {
    std::cerr << "latdim: computation error: " << e.what() << "\n";
    return kExitCompute;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "latdim: input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
