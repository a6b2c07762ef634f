#include "latdim/linalg.hpp"

#include "latdim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace latdim {

void require_valid(const Matrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw InvalidMatrix(std::string(what) + ": empty shape");
  }
  if (!m.allFinite()) {
    throw InvalidMatrix(std::string(what) + ": non-finite entry");
  }
}

Matrix SvdFactors::reconstruct() const {
  return left * singular_values.asDiagonal() * right.transpose();
}

namespace {

Eigen::BDCSVD<Matrix> thin_svd(const Matrix& m, unsigned options) {
  Eigen::BDCSVD<Matrix> solver(m, options);
  if (solver.info() != Eigen::Success) {
    throw InvalidMatrix("svd: decomposition failed");
  }
  return solver;
}

}  // namespace

SvdFactors svd(const Matrix& m) {
  require_valid(m, "svd");
  auto solver = thin_svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SvdFactors out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  for (Eigen::Index j = 0; j < out.left.cols(); ++j) {
    Eigen::Index pivot = 0;
    out.left.col(j).cwiseAbs().maxCoeff(&pivot);
    if (out.left(pivot, j) < 0.0) {
      out.left.col(j) *= -1.0;
      out.right.col(j) *= -1.0;
    }
  }
  return out;
}

Vector singular_values(const Matrix& m) {
  require_valid(m, "singular_values");
  return thin_svd(m, 0).singularValues();
}

TangentFrame::TangentFrame(Matrix basis) : basis_(std::move(basis)) {
  require_valid(basis_, "tangent frame");
  if (basis_.cols() > basis_.rows()) {
    throw InvalidMatrix("tangent frame: more columns than ambient dimension");
  }
  const Matrix gram = basis_.transpose() * basis_;
  const double err = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (err > kOrthonormalTol) {
    throw InvalidMatrix("tangent frame: columns not orthonormal (error " + std::to_string(err) + ")");
  }
}

TangentFrame TangentFrame::leading(Eigen::Index k) const {
  if (k < 1 || k > dim()) {
    throw IndexError("tangent frame: leading(" + std::to_string(k) + ") out of range");
  }
  return TangentFrame(basis_.leftCols(k));
}

Matrix TangentFrame::projector() const { return basis_ * basis_.transpose(); }

TangentFrame orthonormalize(const Matrix& m) {
  require_valid(m, "orthonormalize");
  if (m.cols() > m.rows()) {
    throw RankDeficient("orthonormalize: more columns than rows");
  }
  const Vector sv = singular_values(m);
  if (!(sv(sv.size() - 1) > 1e-10 * sv(0))) {
    throw RankDeficient("orthonormalize: input does not have full column rank");
  }

  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return TangentFrame(std::move(q));
}

namespace {

void require_same_ambient(const TangentFrame& a, const TangentFrame& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch(std::string(op) + ": ambient dimensions " + std::to_string(a.ambient_dim()) +
                            " and " + std::to_string(b.ambient_dim()) + " differ");
  }
}

}  // namespace

std::vector<double> principal_angles(const TangentFrame& a, const TangentFrame& b) {
  require_same_ambient(a, b, "principal_angles");
  // Equal dims: a fixed tie-break makes the result exactly symmetric.
  bool a_first = a.dim() < b.dim();
  if (a.dim() == b.dim()) {
    const double* pa = a.basis().data();
    const double* pb = b.basis().data();
    a_first = !std::lexicographical_compare(pb, pb + b.basis().size(), pa, pa + a.basis().size());
  }
  const TangentFrame& small = a_first ? a : b;
  const TangentFrame& large = a_first ? b : a;
  const Eigen::Index k = small.dim();

  // arccos loses all accuracy for angles near zero (acos(1 - 1e-16) ~ 1.5e-8),
  // so small angles come from the sines: singular values of the part of the
  // smaller basis lying outside the larger span. Cosines descend while sines
  // ascend, so entry i of each describes the same angle.
  const Matrix cross = small.basis().transpose() * large.basis();
  const Vector cosines = thin_svd(cross, 0).singularValues();

  const Matrix residual = small.basis() - large.basis() * (large.basis().transpose() * small.basis());
  Vector sines = thin_svd(residual, 0).singularValues();
  std::sort(sines.data(), sines.data() + sines.size());

  std::vector<double> angles(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    const double c = std::clamp(cosines(i), -1.0, 1.0);
    const double s = std::clamp(sines(i), 0.0, 1.0);
    angles[static_cast<std::size_t>(i)] = c * c >= 0.5 ? std::asin(s) : std::acos(c);
  }
  // Guard the ordering against rounding between the two branches.
  std::sort(angles.begin(), angles.end());
  return angles;
}

double geodesic_distance_normalized(const TangentFrame& a, const TangentFrame& b) {
  const auto angles = principal_angles(a, b);
  double sum = 0.0;
  for (double t : angles) sum += t * t;
  return std::sqrt(sum / static_cast<double>(angles.size()));
}

double projection_distance(const TangentFrame& a, const TangentFrame& b) {
  require_same_ambient(a, b, "projection_distance");
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("projection_distance: frame dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()) + " differ");
  }
  if (a.dim() == 0) return 0.0;
  // For equal dims ||P_a - P_b||_2 is the sine of the largest principal
  // angle, i.e. the spectral norm of (I - P_b) A.
  const Matrix residual = a.basis() - b.basis() * (b.basis().transpose() * a.basis());
  return std::min(thin_svd(residual, 0).singularValues()(0), 1.0);
}

double spectral_norm(const Matrix& m) { return singular_values(m)(0); }

double nuclear_norm(const Matrix& m) { return singular_values(m).sum(); }

}  // namespace latdim
