#pragma once

#include <span>
#include <utility>

namespace latdim::tw {

// One (probability, quantile) node of the tabulated F1 law.
struct QuantileNode {
  double prob;
  double quantile;
};

// Tabulated quantiles of the Tracy-Widom law of order beta = 1, strictly
// increasing in both columns, covering [kMinProb, kMaxProb].
std::span<const QuantileNode> quantile_table();

inline constexpr double kMinProb = 0.005;
inline constexpr double kMaxProb = 0.995;
inline constexpr double kDefaultAlpha = 0.1;

// s with F1(s) = prob, by monotone cubic (Fritsch-Carlson) interpolation of
// the table. Exact at the nodes. Throws OutOfRange outside the table.
double tw1_quantile(double prob);

// Johnstone centering constant for the largest eigenvalue of a p-dimensional
// sample covariance built from n real Gaussian samples:
//   mu = (sqrt(n - 1/2) + sqrt(p - 1/2))^2 / n
// Both constants throw OutOfRange for n < 1 or p < 1.
double centering_mu(double n, double p);

//   sigma = (sqrt(n - 1/2) + sqrt(p - 1/2)) / n
//           * (1/sqrt(n - 1/2) + 1/sqrt(p - 1/2))^(1/3)
double scaling_sigma(double n, double p);

// Level-alpha acceptance bound for a noise eigenvalue:
//   noise_var * (mu(n, p) + tw1_quantile(1 - alpha) * sigma(n, p)).
double tw_threshold(double noise_var, double n, double p, double alpha);

}  // namespace latdim::tw
