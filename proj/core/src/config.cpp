#include "latdim/config.hpp"

#include "latdim/errors.hpp"
#include "latdim/io.hpp"
#include "latdim/tracy_widom.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace latdim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& text) {
  std::uint64_t v = 0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError("expected a nonnegative integer, got '" + text + "'");
  }
  return v;
}

double parse_real(const std::string& text) {
  const auto t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size() || !std::isfinite(v)) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a real number, got '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

void require(bool ok, const std::string& key, const std::string& why) {
  if (!ok) throw ParseError("config key '" + key + "': " + why);
}

}  // namespace

std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& part : split(text, ',')) out.push_back(static_cast<std::size_t>(parse_u64(part)));
  if (out.empty()) throw ParseError("empty list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_real(part));
  if (out.empty()) throw ParseError("empty list");
  return out;
}

MlpSpec RunConfig::mlp_spec() const {
  MlpSpec spec;
  if (input_dim) spec.input_dim = *input_dim;
  if (layer_dims) spec.layer_dims = *layer_dims;
  if (activation) spec.activation = *activation;
  if (leaky_slope) spec.leaky_slope = *leaky_slope;
  if (weight_scale) spec.weight_scale = *weight_scale;
  if (net_seed) spec.seed = *net_seed;
  spec.validate();
  return spec;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig cfg;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"input_dim",
       [&](const std::string& k, const std::string& v) {
         cfg.input_dim = parse_u64(v);
         require(*cfg.input_dim >= 1, k, "must be >= 1");
       }},
      {"layer_dims",
       [&](const std::string& k, const std::string& v) {
         cfg.layer_dims = parse_count_list(v);
         for (auto d : *cfg.layer_dims) require(d >= 1, k, "dims must be >= 1");
       }},
      {"activation", [&](const std::string&, const std::string& v) { cfg.activation = parse_activation(v); }},
      {"leaky_slope",
       [&](const std::string& k, const std::string& v) {
         cfg.leaky_slope = parse_real(v);
         require(*cfg.leaky_slope > 0.0 && *cfg.leaky_slope <= 1.0, k, "must lie in (0, 1]");
       }},
      {"weight_scale",
       [&](const std::string& k, const std::string& v) {
         cfg.weight_scale = parse_real(v);
         require(*cfg.weight_scale > 0.0, k, "must be positive");
       }},
      {"net_seed", [&](const std::string&, const std::string& v) { cfg.net_seed = parse_u64(v); }},
      {"jacobian",
       [&](const std::string& k, const std::string& v) {
         require(!v.empty(), k, "empty path");
         cfg.jacobian = v;
       }},
      {"layers",
       [&](const std::string& k, const std::string& v) {
         cfg.layers = parse_count_list(v);
         for (auto l : *cfg.layers) require(l >= 1, k, "layers are 1-based");
       }},
      {"layer",
       [&](const std::string& k, const std::string& v) {
         cfg.layer = parse_u64(v);
         require(*cfg.layer >= 1, k, "layers are 1-based");
       }},
      {"alpha",
       [&](const std::string& k, const std::string& v) {
         cfg.alpha = parse_real(v);
         require(1.0 - *cfg.alpha >= tw::kMinProb && 1.0 - *cfg.alpha <= tw::kMaxProb, k,
                 "must lie in [0.005, 0.995]");
       }},
      {"theta_pre",
       [&](const std::string& k, const std::string& v) {
         cfg.theta_pre = parse_real(v);
         require(*cfg.theta_pre >= 0.0 && *cfg.theta_pre < 1.0, k, "must lie in [0, 1)");
       }},
      {"epsilon",
       [&](const std::string& k, const std::string& v) {
         cfg.epsilon = parse_real(v);
         require(*cfg.epsilon > 0.0, k, "must be positive");
       }},
      {"num_pairs",
       [&](const std::string& k, const std::string& v) {
         cfg.num_pairs = parse_u64(v);
         require(*cfg.num_pairs >= 1, k, "must be >= 1");
       }},
      {"seed", [&](const std::string&, const std::string& v) { cfg.seed = parse_u64(v); }},
      {"z_seed", [&](const std::string&, const std::string& v) { cfg.z_seed = parse_u64(v); }},
      {"output",
       [&](const std::string& k, const std::string& v) {
         require(!v.empty(), k, "empty path");
         cfg.output = v;
       }},
  };

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw ParseError(where + "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ParseError(where + "unknown key '" + key + "'");
    try {
      it->second(key, value);
    } catch (const Error& e) {
      throw ParseError(where + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) { return parse_config(io::read_text(path), path.string()); }

std::string format_net_config(const MlpSpec& spec) {
  std::ostringstream out;
  out << "input_dim = " << spec.input_dim << "\n";
  out << "layer_dims = ";
  for (std::size_t i = 0; i < spec.layer_dims.size(); ++i) out << (i ? "," : "") << spec.layer_dims[i];
  out << "\n";
  out << "activation = " << to_string(spec.activation) << "\n";
  out << "leaky_slope = " << io::format_double(spec.leaky_slope) << "\n";
  out << "weight_scale = " << io::format_double(spec.weight_scale) << "\n";
  out << "net_seed = " << spec.seed << "\n";
  return out.str();
}

}  // namespace latdim
