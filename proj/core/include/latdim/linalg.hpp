#pragma once

#include <Eigen/Dense>

#include <vector>

namespace latdim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Throws InvalidMatrix unless m is nonempty with all entries finite.
void require_valid(const Matrix& m, const char* what = "matrix");

// Thin SVD m = left * diag(singular_values) * right^T with r = min(rows, cols).
//   left:  rows x r, orthonormal columns (output-space singular vectors)
//   right: cols x r, orthonormal columns (input-space singular vectors)
// Singular values are nonincreasing. Each left vector is sign-normalized so
// its largest-magnitude entry is positive; the matching right vector follows.
struct SvdFactors {
  Matrix left;
  Vector singular_values;
  Matrix right;

  Eigen::Index rank_bound() const { return singular_values.size(); }
  Matrix reconstruct() const;
};

SvdFactors svd(const Matrix& m);

// Singular values only, nonincreasing. Cheaper than svd() when the
// singular vectors are not needed.
Vector singular_values(const Matrix& m);

// Orthonormal basis of a k-dimensional subspace of R^ambient_dim.
class TangentFrame {
 public:
  // Takes ownership of basis; throws InvalidMatrix if the columns are not
  // orthonormal within 1e-10 or the shape is empty.
  explicit TangentFrame(Matrix basis);

  Eigen::Index ambient_dim() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  // Frame spanned by the first k columns.
  TangentFrame leading(Eigen::Index k) const;

  // Orthogonal projector basis * basis^T.
  Matrix projector() const;

  static constexpr double kOrthonormalTol = 1e-10;

 private:
  Matrix basis_;
};

// Gram-Schmidt via Householder QR; the frame spans col(m). Signs are chosen
// so the implied triangular factor has a positive diagonal.
// Throws RankDeficient when sigma_min <= 1e-10 * sigma_max.
TangentFrame orthonormalize(const Matrix& m);

// Principal angles between span(a) and span(b), k = min(a.dim, b.dim) of
// them, returned in nondecreasing order (nonincreasing cosine).
std::vector<double> principal_angles(const TangentFrame& a, const TangentFrame& b);

// (1/k * sum theta_i^2)^(1/2) over the k = min(a.dim, b.dim) principal angles.
double geodesic_distance_normalized(const TangentFrame& a, const TangentFrame& b);

// Spectral norm of P_a - P_b. Frames must have equal dim.
double projection_distance(const TangentFrame& a, const TangentFrame& b);

// Spectral norm (largest singular value).
double spectral_norm(const Matrix& m);

// Sum of singular values.
double nuclear_norm(const Matrix& m);

}  // namespace latdim
