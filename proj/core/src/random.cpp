#include "latdim/random.hpp"

#include <cmath>
#include <numbers>

namespace latdim {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double to_unit(std::uint64_t bits) { return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53; }

}  // namespace

std::uint64_t CounterRng::hash(std::uint64_t index) const {
  return splitmix(splitmix(splitmix(seed_) ^ stream_) ^ index);
}

double CounterRng::uniform(std::uint64_t index) const { return to_unit(hash(index)); }

double CounterRng::normal(std::uint64_t index) const {
  const double u1 = to_unit(hash(2 * index));
  const double u2 = to_unit(hash(2 * index + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector CounterRng::normal_vector(Eigen::Index dim, std::uint64_t offset) const {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(offset + static_cast<std::uint64_t>(i));
  return v;
}

Matrix CounterRng::normal_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t offset) const {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = normal(offset + static_cast<std::uint64_t>(r * cols + c));
    }
  }
  return m;
}

Vector CounterRng::unit_vector(Eigen::Index dim, std::uint64_t offset) const {
  Vector v = normal_vector(dim, offset);
  return v / v.norm();
}

CounterRng CounterRng::substream(std::uint64_t s) const { return CounterRng(hash(~s), s); }

Matrix random_orthogonal(Eigen::Index n, const CounterRng& rng) {
  Eigen::HouseholderQR<Matrix> qr(rng.normal_matrix(n, n));
  Matrix q = qr.householderQ();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace latdim
