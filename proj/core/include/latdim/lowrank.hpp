#pragma once

#include "latdim/linalg.hpp"

#include <vector>

namespace latdim {

// Nuclear-norm penalized denoising: the minimizer of
//   ||L||_* + gamma * ||m - L||_F^2
// is singular-value soft thresholding at 1/(2 gamma).
Matrix nnp_denoise(const Matrix& m, double gamma);

// Objective the closed form above minimizes.
double nnp_objective(const Matrix& m, double gamma, const Matrix& l);

struct NnpCheck {
  bool pass = false;
  double spectral_excess = 0.0;   // max(||Z||_2 - 1, 0)
  double inner_product_gap = 0.0;  // |<Z, L> - ||L||_*| / max(||L||_*, 1)
};

// Subgradient certificate: with Z = 2 gamma (m - L), L is optimal iff
// ||Z||_2 <= 1 and <Z, L> = ||L||_*. Passes at ||Z||_2 <= 1 + 1e-8 and an
// inner-product gap within 1e-6 relative.
NnpCheck nnp_optimality_check(const Matrix& m, double gamma, const Matrix& l_star);

struct PcpOptions {
  double tol = 1e-7;
  int max_iter = 1000;
  // The penalty starts at mu0 = 0.25 * rows * cols / ||m||_1 and is
  // multiplied by penalty_growth after every dual step, up to
  // penalty_cap * mu0. The default keeps it fixed. From this mu0,
  // growth of 1.5 meets the residual tolerance before the split is right.
  double penalty_growth = 1.0;
  double penalty_cap = 1e7;
};

struct PcpResult {
  Matrix low_rank;
  Matrix sparse;
  int iterations = 0;
  double primal_residual = 0.0;  // ||m - L - S||_F
  bool converged = false;
};

// Principal component pursuit  min ||L||_* + gamma ||S||_1  s.t. L + S = m,
// by the alternating-directions (inexact augmented Lagrangian) scheme. The
// returned pair is the iterate with the smallest primal residual.
PcpResult pcp_decompose(const Matrix& m, double gamma, const PcpOptions& options = {});

// Count of singular values above rel_tol * sigma_max (0 for the zero matrix).
std::size_t numerical_rank(const Matrix& m, double rel_tol = 1e-8);

struct SweepRow {
  double n_inverse_gamma = 0.0;
  std::size_t estimated_rank = 0;
  double corruption_ratio = 0.0;  // ||S||_F / ||m||_F
  int iterations = 0;
  bool converged = false;
};

// One PCP solve per n in n_grid (gamma = 1/n) on m, typically a Gram matrix
// J^T J.
std::vector<SweepRow> sparsity_sweep(const Matrix& m, const std::vector<double>& n_grid,
                                     const PcpOptions& options = {});

}  // namespace latdim
