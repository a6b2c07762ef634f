#pragma once

#include "latdim/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace latdim {

// Eigenvalue spectrum fed to the nested hypothesis tests. eigenvalues are the
// squared singular values that survived preprocessing, nonincreasing and
// strictly positive; p is their count.
struct SpectrumContext {
  std::vector<double> eigenvalues;
  double n = 0.0;  // effective sample count of the noise model
  double theta_pre = 0.0;
  double alpha = 0.1;

  std::size_t p() const { return eigenvalues.size(); }
};

// Diagnostics of one test "lambda_k <= noise_var(k) * (mu + s * sigma)".
struct RankTestStep {
  std::size_t k = 0;  // 1-based index of the eigenvalue under test
  double lambda = 0.0;
  double noise_var = 0.0;
  double threshold = 0.0;
  bool accepted = false;  // true when lambda_k is judged noise
  bool clamped = false;   // a quadratic discriminant was clamped at zero
};

struct RankEstimate {
  std::size_t rank = 0;
  double noise_var_at_stop = 0.0;
  std::vector<RankTestStep> per_step;
  double theta_pre = 0.0;
  double alpha = 0.1;
  double n = 0.0;
  std::size_t p = 0;
  bool saturated = false;  // no test accepted; rank = p - 1
};

// Keeps the sigma_i with sigma_i^2 > theta_pre * max sigma^2 (values at the
// threshold are dropped). Nonpositive values never survive.
// Throws EmptySpectrum if no value is strictly positive.
std::vector<double> preprocess_filter(const std::vector<double>& singular_values, double theta_pre);

struct NoiseEstimate {
  double noise_var = 0.0;
  std::size_t iterations = 0;
  bool clamped = false;
};

// Noise variance under the hypothesis that eigenvalues k+1..p are noise.
// Solves the coupled system
//   noise = (1/(p-k)) [ sum_{j>k} lambda_j + sum_{j<=k} (lambda_j - rho_j) ]
//   rho_j^2 - rho_j (lambda_j + noise - noise (p-k)/n) + lambda_j noise = 0
// by fixed-point iteration from the tail mean (Aitken-accelerated), taking
// the larger root for each rho_j. Stops at relative change < 1e-12. If 500
// sweeps do not get there, the scalar equation noise = sweep(noise) is
// bracketed and solved by TOMS 748; NoiseEstimateDiverged is thrown only
// when no bracket is found.
NoiseEstimate estimate_noise(const SpectrumContext& ctx, std::size_t k);

// The nested test cascade on an already filtered spectrum.
RankEstimate estimate_rank_from_spectrum(const SpectrumContext& ctx);

// Pseudorank of a (noisy) Jacobian: SVD, square, filter with theta_pre, then
// run the cascade with n = n_override or jacobian.cols() (the input dim).
RankEstimate estimate_rank(const Matrix& jacobian, double alpha, double theta_pre,
                           std::optional<double> n_override = std::nullopt);

// Same as estimate_rank, starting from precomputed singular values.
RankEstimate estimate_rank_from_singular_values(const Vector& singular_values, double n, double alpha,
                                                double theta_pre);

struct DimensionSurvey {
  std::vector<std::optional<RankEstimate>> estimates;  // input order
  std::vector<std::string> errors;                     // empty string on success
  std::map<std::size_t, std::size_t> histogram;        // rank -> count

  std::size_t failures() const;
  // Most frequent rank; smallest rank on ties. Requires a nonempty histogram.
  std::size_t mode() const;
};

DimensionSurvey dimension_survey(const std::vector<Matrix>& jacobians, double alpha, double theta_pre);

}  // namespace latdim
