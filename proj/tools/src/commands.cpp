#include "commands.hpp"

#include "latdim/distortion.hpp"
#include "latdim/errors.hpp"
#include "latdim/io.hpp"
#include "latdim/local_geometry.hpp"
#include "latdim/lowrank.hpp"
#include "latdim/pseudorank.hpp"
#include "latdim/random.hpp"
#include "latdim/tracy_widom.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

namespace latdim::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kDefaultThetaPre = 0.005;

struct Context {
  RunConfig cfg;
  fs::path config_dir;
  std::uint64_t seed = 0;
  std::string out;
};

Context make_context(const GlobalFlags& g) {
  Context ctx;
  if (!g.config.empty()) {
    ctx.cfg = load_config(g.config);
    ctx.config_dir = fs::path(g.config).parent_path();
  }
  ctx.seed = g.seed.value_or(ctx.cfg.seed.value_or(0));
  ctx.out = !g.out.empty() ? g.out : ctx.cfg.output.value_or("");
  return ctx;
}

// Paths inside a config file are relative to that file.
std::string config_path(const Context& ctx, const std::string& p) {
  const fs::path path(p);
  if (path.is_absolute() || ctx.config_dir.empty()) return p;
  return (ctx.config_dir / path).string();
}

std::string num(double x) {
  return std::isnan(x) ? std::string() : io::format_double(x);
}

MlpNetwork resolve_net(const Context& ctx, const NetFlags& f) {
  if (!f.net.empty()) return build_mlp(load_config(f.net).mlp_spec());
  if (ctx.cfg.has_net()) return build_mlp(ctx.cfg.mlp_spec());
  throw InputError("no network: pass --net <file> or put the network keys in --config");
}

std::size_t resolve_layer(const Context& ctx, const NetFlags& f, const MlpNetwork& net) {
  const std::size_t layer = f.layer.value_or(ctx.cfg.layer.value_or(net.depth()));
  if (layer < 1 || layer > net.depth()) {
    throw IndexError("layer " + std::to_string(layer) + " outside 1.." + std::to_string(net.depth()));
  }
  return layer;
}

Vector resolve_z(const Context& ctx, const NetFlags& f, const MlpNetwork& net) {
  const std::uint64_t z_seed = f.z_seed.value_or(ctx.cfg.z_seed.value_or(0));
  return CounterRng(z_seed).normal_vector(static_cast<Eigen::Index>(net.input_dim()));
}

// Jacobian from --jacobian / config, else from the network at z.
Matrix resolve_jacobian(const Context& ctx, const std::string& flag, const NetFlags& f) {
  if (!flag.empty()) return io::read_matrix(flag);
  if (ctx.cfg.jacobian) return io::read_matrix(config_path(ctx, *ctx.cfg.jacobian));
  const MlpNetwork net = resolve_net(ctx, f);
  const std::size_t layer = resolve_layer(ctx, f, net);
  return net.jacobian(resolve_z(ctx, f, net), layer);
}

std::pair<std::size_t, std::size_t> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ParseError("--k-range expects a..b, got '" + text + "'");
  const auto a = parse_count_list(text.substr(0, dots));
  const auto b = parse_count_list(text.substr(dots + 2));
  if (a.size() != 1 || b.size() != 1 || a[0] < 1 || b[0] < a[0]) {
    throw ParseError("--k-range expects 1 <= a <= b, got '" + text + "'");
  }
  return {a[0], b[0]};
}

}  // namespace

int run_rank(const GlobalFlags& g, const RankFlags& f) {
  const Context ctx = make_context(g);
  const Matrix j = resolve_jacobian(ctx, f.jacobian, f.net);
  const double alpha = f.alpha.value_or(ctx.cfg.alpha.value_or(tw::kDefaultAlpha));
  const double theta = f.theta_pre.value_or(ctx.cfg.theta_pre.value_or(kDefaultThetaPre));
  const RankEstimate est = estimate_rank(j, alpha, theta, f.n_override);

  std::ostringstream csv;
  csv << "# rank=" << est.rank << " p=" << est.p << " n=" << num(est.n) << " alpha=" << num(alpha)
      << " theta_pre=" << num(theta) << " noise_var=" << num(est.noise_var_at_stop)
      << " saturated=" << (est.saturated ? 1 : 0) << "\n";
  csv << "k,lambda_k,threshold,accepted\n";
  for (const auto& step : est.per_step) {
    csv << step.k << "," << num(step.lambda) << "," << num(step.threshold) << "," << (step.accepted ? 1 : 0) << "\n";
  }
  io::write_text_atomic(ctx.out, csv.str());
  return 0;
}

int run_distortion(const GlobalFlags& g, const DistortionFlags& f) {
  const Context ctx = make_context(g);
  const MlpNetwork net = resolve_net(ctx, f.net);

  std::vector<std::size_t> layers;
  if (!f.layers.empty()) {
    layers = parse_count_list(f.layers);
  } else if (ctx.cfg.layers) {
    layers = *ctx.cfg.layers;
  } else {
    for (std::size_t l = 1; l <= net.depth(); ++l) layers.push_back(l);
  }

  DistortionOptions opt;
  opt.num_pairs = f.pairs.value_or(ctx.cfg.num_pairs.value_or(opt.num_pairs));
  opt.epsilon = f.epsilon.value_or(ctx.cfg.epsilon.value_or(opt.epsilon));
  opt.alpha = f.alpha.value_or(ctx.cfg.alpha.value_or(opt.alpha));
  opt.theta_pre = f.theta_pre.value_or(ctx.cfg.theta_pre.value_or(opt.theta_pre));
  opt.seed = ctx.seed;
  opt.keep_per_pair = !f.raw.empty();

  const std::vector<DistortionReport> reports = layer_sweep(net, layers, opt);

  std::ostringstream csv;
  csv << "layer,i_rand,i_local,D,skipped_pairs,degenerate\n";
  for (const auto& r : reports) {
    csv << r.layer << "," << num(r.i_rand) << "," << num(r.i_local) << "," << (r.score ? num(*r.score) : "") << ","
        << r.skipped_rand + r.skipped_local << "," << (r.degenerate ? 1 : 0) << "\n";
  }
  io::write_text_atomic(ctx.out, csv.str());

  if (!f.raw.empty()) {
    std::ostringstream raw;
    raw << "layer,kind,pair,distance\n";
    for (const auto& r : reports) {
      for (std::size_t i = 0; i < r.per_pair_rand.size(); ++i) {
        raw << r.layer << ",rand," << i << "," << num(r.per_pair_rand[i]) << "\n";
      }
      for (std::size_t i = 0; i < r.per_pair_local.size(); ++i) {
        raw << r.layer << ",local," << i << "," << num(r.per_pair_local[i]) << "\n";
      }
    }
    io::write_text_atomic(f.raw, raw.str());
  }
  return 0;
}

int run_offmanifold(const GlobalFlags& g, const OffManifoldFlags& f) {
  const Context ctx = make_context(g);
  const MlpNetwork net = resolve_net(ctx, f.net);
  const std::size_t layer = resolve_layer(ctx, f.net, net);
  const Vector z = resolve_z(ctx, f.net, net);
  const std::size_t max_k = std::min(net.input_dim(), net.output_dim(layer));

  std::size_t k_lo = 1;
  std::size_t k_hi = max_k;
  if (!f.k_range.empty()) std::tie(k_lo, k_hi) = parse_k_range(f.k_range);
  if (k_hi > max_k) throw IndexError("--k-range upper end exceeds " + std::to_string(max_k));
  std::vector<std::size_t> ks;
  for (std::size_t k = k_lo; k <= k_hi; ++k) ks.push_back(k);
  const std::vector<double> cs = parse_real_list(f.c_list);

  const double alpha = f.alpha.value_or(ctx.cfg.alpha.value_or(tw::kDefaultAlpha));
  const double theta = f.theta_pre.value_or(ctx.cfg.theta_pre.value_or(kDefaultThetaPre));
  const RankEstimate est = estimate_rank(net.jacobian(z, layer), alpha, theta);

  AdamOptions adam;
  adam.lr = f.lr;
  adam.iters = f.iters;
  if (!(adam.lr > 0.0) || adam.iters < 1) throw OutOfRange("--lr must be positive and --iters >= 1");
  const auto cells = off_manifold_sweep(net, layer, z, ks, cs, adam);

  std::ostringstream csv;
  csv << "# estimated_rank=" << est.rank << " layer=" << layer << " alpha=" << num(alpha)
      << " theta_pre=" << num(theta) << "\n";
  csv << "k,c,final_loss,iterations,diverged\n";
  for (const auto& cell : cells) {
    csv << cell.k << "," << num(cell.c) << ",";
    if (cell.error.empty()) {
      csv << num(cell.result.final_loss) << "," << cell.result.iterations << ",0\n";
    } else {
      csv << ",,1\n";
    }
  }
  io::write_text_atomic(ctx.out, csv.str());
  return 0;
}

int run_lowrank(const GlobalFlags& g, const LowRankFlags& f) {
  const Context ctx = make_context(g);
  const Matrix j = resolve_jacobian(ctx, f.jacobian, f.net);
  const Matrix gram = j.transpose() * j;

  PcpOptions opt;
  opt.tol = f.tol;
  opt.max_iter = f.max_iter;
  if (!(opt.tol > 0.0) || opt.max_iter < 1) throw OutOfRange("--tol must be positive and --max-iter >= 1");
  const auto rows = sparsity_sweep(gram, parse_real_list(f.n_grid), opt);

  std::ostringstream csv;
  csv << "n,estimated_rank,corruption_ratio,iterations,converged\n";
  for (const auto& r : rows) {
    csv << num(r.n_inverse_gamma) << "," << r.estimated_rank << "," << num(r.corruption_ratio) << ","
        << r.iterations << "," << (r.converged ? 1 : 0) << "\n";
  }
  io::write_text_atomic(ctx.out, csv.str());
  return 0;
}

int run_gen_net(const GlobalFlags& g, const GenNetFlags& f) {
  const Context ctx = make_context(g);
  MlpSpec spec = ctx.cfg.mlp_spec();
  if (f.input_dim) spec.input_dim = *f.input_dim;
  if (!f.layer_dims.empty()) spec.layer_dims = parse_count_list(f.layer_dims);
  if (!f.activation.empty()) spec.activation = parse_activation(f.activation);
  if (f.weight_scale) spec.weight_scale = *f.weight_scale;
  if (f.leaky_slope) spec.leaky_slope = *f.leaky_slope;
  if (g.seed) spec.seed = *g.seed;
  const MlpNetwork net = build_mlp(spec);

  io::write_text_atomic(ctx.out, format_net_config(spec));

  if (!f.vectors.empty()) {
    // Probe i is z_i = CounterRng(net_seed, 1) draws at offset i * input_dim.
    const auto d_z = static_cast<Eigen::Index>(spec.input_dim);
    const CounterRng rng(spec.seed, 1);
    std::ostringstream csv;
    csv << "# forward outputs at layer " << net.depth() << " for " << f.probes << " probes\n";
    for (std::size_t i = 0; i < f.probes; ++i) {
      const Vector w = net.forward(rng.normal_vector(d_z, static_cast<std::uint64_t>(i) * spec.input_dim));
      for (Eigen::Index c = 0; c < w.size(); ++c) csv << (c ? "," : "") << num(w(c));
      csv << "\n";
    }
    io::write_text_atomic(f.vectors, csv.str());
  }
  return 0;
}

int run_metrics(const GlobalFlags& g, const MetricsFlags& f) {
  const Context ctx = make_context(g);
  if (f.dim < 1 || 2 * f.dim > f.ambient) throw OutOfRange("metrics: need 1 <= dim and 2 * dim <= ambient");
  const auto n = static_cast<Eigen::Index>(f.ambient);
  const auto k = static_cast<Eigen::Index>(f.dim);

  // W = span(e_1..e_k); W' shares the first k0 axes and takes the rest from
  // e_{k+1}.. so the two subspaces meet in exactly k0 dimensions.
  Matrix a = Matrix::Zero(n, k);
  for (Eigen::Index i = 0; i < k; ++i) a(i, i) = 1.0;
  const TangentFrame fa(a);

  std::ostringstream csv;
  csv << "k0,d_geo,d_proj\n";
  for (Eigen::Index k0 = 0; k0 <= k; ++k0) {
    Matrix b = Matrix::Zero(n, k);
    for (Eigen::Index i = 0; i < k0; ++i) b(i, i) = 1.0;
    for (Eigen::Index i = k0; i < k; ++i) b(k + i - k0, i) = 1.0;
    const TangentFrame fb(b);
    csv << k0 << "," << num(geodesic_distance_normalized(fa, fb)) << "," << num(projection_distance(fa, fb)) << "\n";
  }
  io::write_text_atomic(ctx.out, csv.str());
  return 0;
}

}  // namespace latdim::cli
