#include "latdim/config.hpp"
#include "latdim/errors.hpp"
#include "latdim/io.hpp"
#include "latdim/random.hpp"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace latdim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "latdim_unit";
  fs::create_directories(dir);
  return dir / name;
}

void write_raw(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

}  // namespace

TEST_CASE("jmat header layout") {
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const auto bytes = io::encode_jmat(m);
  REQUIRE(bytes.size() == 4 + 4 + 8 + 8 + 6 * 8);
  CHECK(std::memcmp(bytes.data(), "JMAT", 4) == 0);
  CHECK(bytes[4] == 1);
  CHECK(bytes[8] == 2);
  CHECK(bytes[16] == 3);
  double second;
  std::memcpy(&second, bytes.data() + 24 + 8, 8);
  CHECK(second == 2.0);  // row-major
}

TEST_CASE("jmat round trip is bit exact, including special bit patterns") {
  Matrix m = CounterRng(1).normal_matrix(5, 7);
  m(0, 0) = -0.0;
  m(1, 1) = std::numeric_limits<double>::denorm_min();
  m(2, 2) = std::numeric_limits<double>::max();
  const Matrix back = io::decode_jmat(io::encode_jmat(m));
  REQUIRE(back.rows() == 5);
  REQUIRE(back.cols() == 7);
  CHECK(std::memcmp(back.data(), m.data(), sizeof(double) * 35) == 0);

  const auto path = scratch("rt.jmat");
  io::write_jmat(path, m);
  CHECK(io::read_matrix(path) == m);
}

TEST_CASE("jmat decode errors") {
  auto bytes = io::encode_jmat(Matrix::Ones(2, 2));
  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(io::decode_jmat(bad), ParseError);
  bad = bytes;
  bad[4] = 2;
  CHECK_THROWS_AS(io::decode_jmat(bad), ParseError);
  bad = bytes;
  bad.pop_back();
  CHECK_THROWS_AS(io::decode_jmat(bad), ParseError);
  bad = bytes;
  bad.push_back(0);
  CHECK_THROWS_AS(io::decode_jmat(bad), ParseError);
  CHECK_THROWS_AS(io::decode_jmat({'J', 'M'}), ParseError);

  const auto path = scratch("bad.jmat");
  write_raw(path, "NOPE and more bytes here");
  CHECK_THROWS_AS(io::read_matrix(path), ParseError);
  CHECK_THROWS_AS(io::read_matrix(scratch("missing.jmat")), InputError);
}

TEST_CASE("csv matrices") {
  const auto path = scratch("m.csv");
  write_raw(path, "# comment\n1, 2.5 ,3\n\n4,5,-6e-3\n");
  Matrix expected(2, 3);
  expected << 1, 2.5, 3, 4, 5, -6e-3;
  CHECK(io::read_matrix(path) == expected);
  write_raw(path, "1,2\n3\n");
  CHECK_THROWS_AS(io::read_matrix_csv(path), ParseError);
  write_raw(path, "1,x\n");
  CHECK_THROWS_AS(io::read_matrix_csv(path), ParseError);
  write_raw(path, "# nothing\n");
  CHECK_THROWS_AS(io::read_matrix_csv(path), ParseError);
}

TEST_CASE("number formatting round-trips") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(3.0) == "3");
  const CounterRng rng(2);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const double x = rng.normal(i) * std::pow(10.0, static_cast<int>(i % 40) - 20);
    CHECK(std::stod(io::format_double(x)) == x);
  }
}

TEST_CASE("atomic write leaves no temp file") {
  const auto path = scratch("out.txt");
  io::write_text_atomic(path, "a,b\n1,2\n");
  CHECK(io::read_text(path) == "a,b\n1,2\n");
  for (const auto& e : fs::directory_iterator(path.parent_path())) {
    CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
  }
}

TEST_CASE("config parsing") {
  const auto cfg = parse_config(
      "# net\n"
      "input_dim = 16\n"
      "layer_dims = 8, 8,4\n"
      "activation = softplus   # trailing comment\n"
      "weight_scale=1.5\n"
      "net_seed = 7\n"
      "alpha = 0.05\n"
      "theta_pre = 0.001\n"
      "layers = 1,3\n"
      "num_pairs = 50\n"
      "epsilon = 0.2\n"
      "jacobian = j.jmat\n");
  CHECK(*cfg.input_dim == 16);
  CHECK(*cfg.layer_dims == std::vector<std::size_t>{8, 8, 4});
  CHECK(*cfg.activation == Activation::Softplus);
  CHECK(*cfg.alpha == 0.05);
  CHECK(*cfg.layers == std::vector<std::size_t>{1, 3});
  CHECK(*cfg.jacobian == "j.jmat");
  CHECK_FALSE(cfg.seed.has_value());
  CHECK(cfg.has_net());
  const auto spec = cfg.mlp_spec();
  CHECK(spec.weight_scale == 1.5);
  CHECK(spec.seed == 7);
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config("colour = red\n"), ParseError);
  CHECK_THROWS_AS(parse_config("alpha\n"), ParseError);
  CHECK_THROWS_AS(parse_config("alpha = 0.9999\n"), ParseError);
  CHECK_THROWS_AS(parse_config("theta_pre = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("num_pairs = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_config("num_pairs = -3\n"), ParseError);
  CHECK_THROWS_AS(parse_config("epsilon = nan\n"), ParseError);
  CHECK_THROWS_AS(parse_config("leaky_slope = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_config("layers = 0,1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("activation = relu\n"), ParseError);
  CHECK_THROWS_AS(parse_config("input_dim = 12abc\n"), ParseError);
}

TEST_CASE("network config round trip") {
  MlpSpec spec;
  spec.input_dim = 9;
  spec.layer_dims = {5, 6};
  spec.activation = Activation::LeakyRelu;
  spec.leaky_slope = 0.3;
  spec.weight_scale = 0.7;
  spec.seed = 42;
  const auto back = parse_config(format_net_config(spec)).mlp_spec();
  CHECK(back.input_dim == 9);
  CHECK(back.layer_dims == spec.layer_dims);
  CHECK(back.activation == spec.activation);
  CHECK(back.leaky_slope == 0.3);
  CHECK(back.weight_scale == 0.7);
  CHECK(back.seed == 42);
}
