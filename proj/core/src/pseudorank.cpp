#include "latdim/pseudorank.hpp"

#include "latdim/errors.hpp"
#include "latdim/tracy_widom.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace latdim {

std::vector<double> preprocess_filter(const std::vector<double>& singular_values, double theta_pre) {
  if (!(theta_pre >= 0.0 && theta_pre < 1.0)) {
    throw OutOfRange("preprocess_filter: theta_pre must lie in [0, 1)");
  }
  double max_sq = 0.0;
  for (double s : singular_values) max_sq = std::max(max_sq, s * s);
  if (!(max_sq > 0.0)) {
    throw EmptySpectrum("preprocess_filter: no strictly positive singular value");
  }
  const double cut = theta_pre * max_sq;
  std::vector<double> kept;
  for (double s : singular_values) {
    if (s > 0.0 && s * s > cut) kept.push_back(s);
  }
  return kept;
}

namespace {

// Fallback for fixed points sitting on the clamp boundary, where the sweep
// has unbounded slope and plain iteration crawls. G(s) = sweep(s) - s is
// positive as s -> 0+ (the sweep returns at least the tail mean there) and
// negative for large s, so the root can always be bracketed.
template <typename Sweep>
NoiseEstimate solve_bracketed(Sweep& sweep, const bool& clamped, double start, std::size_t k, std::size_t used) {
  auto residual = [&](double s) { return sweep(s) - s; };
  double lo = start;
  double hi = start;
  std::uintmax_t evals = 0;
  while (residual(lo) <= 0.0 && evals < 200) {
    lo *= 0.5;
    ++evals;
  }
  while (residual(hi) >= 0.0 && evals < 400) {
    hi *= 2.0;
    ++evals;
  }
  const double g_lo = residual(lo);
  const double g_hi = residual(hi);
  if (!(g_lo > 0.0 && g_hi < 0.0)) {
    throw NoiseEstimateDiverged("estimate_noise: could not bracket the noise level at k = " + std::to_string(k));
  }
  std::uintmax_t max_iter = 200;
  const auto root = boost::math::tools::toms748_solve(residual, lo, hi, g_lo, g_hi,
                                                      boost::math::tools::eps_tolerance<double>(50), max_iter);
  NoiseEstimate out;
  out.noise_var = 0.5 * (root.first + root.second);
  sweep(out.noise_var);
  out.clamped = clamped;
  out.iterations = used + static_cast<std::size_t>(evals + max_iter);
  return out;
}

}  // namespace

NoiseEstimate estimate_noise(const SpectrumContext& ctx, std::size_t k) {
  const std::size_t p = ctx.p();
  if (k >= p) {
    throw OutOfRange("estimate_noise: k = " + std::to_string(k) + " requires k <= p - 1 = " +
                     std::to_string(p == 0 ? 0 : p - 1));
  }
  const auto& lambda = ctx.eigenvalues;
  const double tail_count = static_cast<double>(p - k);
  const double tail_sum = std::accumulate(lambda.begin() + static_cast<std::ptrdiff_t>(k), lambda.end(), 0.0);

  NoiseEstimate out;
  out.noise_var = tail_sum / tail_count;
  if (k == 0) return out;

  constexpr std::size_t kMaxIter = 500;
  constexpr double kRelTol = 1e-12;
  const double shrink = tail_count / ctx.n;

  // One sweep of the coupled system: refresh every rho_j from the current
  // noise level, then the noise level from the rho_j. With a = noise (1 - c),
  // c = (p - k) / n, the gap x = lambda - rho (rho the larger root) solves
  //   x^2 - x (lambda - a) + lambda * noise * c = 0,
  // and is taken as its smaller root in cancellation-free form; forming
  // lambda - rho directly loses every digit when lambda >> noise.
  bool clamped = false;
  auto sweep = [&](double noise) {
    clamped = false;
    const double a = noise * (1.0 - shrink);
    double signal_excess = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double gap = lambda[j] - a;
      const double prod = lambda[j] * noise * shrink;
      const double disc = gap * gap - 4.0 * prod;
      if (disc < 0.0) {
        // Complex roots: clamp the discriminant, rho = b / 2.
        clamped = true;
        signal_excess += 0.5 * gap;
      } else if (gap > 0.0) {
        signal_excess += 2.0 * prod / (gap + std::sqrt(disc));
      } else {
        signal_excess += 0.5 * (gap - std::sqrt(disc));
      }
    }
    return (tail_sum + signal_excess) / tail_count;
  };

  // Plain sweeps contract slowly (rate close to 1) on steep spectra, so each
  // pair of sweeps is followed by an Aitken extrapolation (Steffensen). The
  // extrapolated point is only taken when it stays within a factor of two of
  // the plain iterate, and a sweep that leaves the positive reals from an
  // extrapolated point falls back to plain iteration for good.
  double noise = out.noise_var;
  double plain = noise;
  bool accelerate = true;
  for (std::size_t evals = 0; evals < kMaxIter;) {
    const double s1 = sweep(noise);
    ++evals;
    if (!std::isfinite(s1) || !(s1 > 0.0)) {
      if (accelerate && noise != plain) {
        accelerate = false;
        noise = plain;
        continue;
      }
      throw NoiseEstimateDiverged("estimate_noise: iterate left the positive reals at k = " + std::to_string(k));
    }
    if (std::abs(s1 - noise) <= kRelTol * s1) {
      out.noise_var = s1;
      out.iterations = evals;
      out.clamped = clamped;
      return out;
    }
    if (!accelerate) {
      noise = plain = s1;
      continue;
    }
    const double s2 = sweep(s1);
    ++evals;
    if (!std::isfinite(s2) || !(s2 > 0.0)) {
      throw NoiseEstimateDiverged("estimate_noise: iterate left the positive reals at k = " + std::to_string(k));
    }
    const double x0 = noise;
    const double curvature = s2 - 2.0 * s1 + x0;
    plain = noise = s2;
    if (curvature != 0.0) {
      const double extrapolated = x0 - (s1 - x0) * (s1 - x0) / curvature;
      if (std::isfinite(extrapolated) && extrapolated >= 0.5 * s2 && extrapolated <= 2.0 * s2) noise = extrapolated;
    }
  }
  return solve_bracketed(sweep, clamped, out.noise_var, k, kMaxIter);
}

RankEstimate estimate_rank_from_spectrum(const SpectrumContext& ctx) {
  const std::size_t p = ctx.p();
  if (p == 0) throw EmptySpectrum("estimate_rank: empty spectrum");

  RankEstimate est;
  est.theta_pre = ctx.theta_pre;
  est.alpha = ctx.alpha;
  est.n = ctx.n;
  est.p = p;

  if (p == 1) {
    est.noise_var_at_stop = ctx.eigenvalues[0];
    return est;
  }

  for (std::size_t k = 1; k < p; ++k) {
    const NoiseEstimate noise = estimate_noise(ctx, k);
    RankTestStep step;
    step.k = k;
    step.lambda = ctx.eigenvalues[k - 1];
    step.noise_var = noise.noise_var;
    step.threshold = tw::tw_threshold(noise.noise_var, ctx.n, static_cast<double>(p - k), ctx.alpha);
    step.accepted = step.lambda <= step.threshold;
    step.clamped = noise.clamped;
    est.per_step.push_back(step);
    est.noise_var_at_stop = noise.noise_var;
    if (step.accepted) {
      est.rank = k - 1;
      return est;
    }
  }
  est.rank = p - 1;
  est.saturated = true;
  return est;
}

RankEstimate estimate_rank_from_singular_values(const Vector& singular_values, double n, double alpha,
                                                double theta_pre) {
  if (!(n >= 1.0)) throw OutOfRange("estimate_rank: effective sample count must be >= 1");
  // Validate alpha before any work so the error does not depend on the spectrum.
  (void)tw::tw1_quantile(1.0 - alpha);

  const std::vector<double> sv(singular_values.data(), singular_values.data() + singular_values.size());
  const std::vector<double> kept = preprocess_filter(sv, theta_pre);

  SpectrumContext ctx;
  ctx.eigenvalues.reserve(kept.size());
  for (double s : kept) ctx.eigenvalues.push_back(s * s);
  ctx.n = n;
  ctx.theta_pre = theta_pre;
  ctx.alpha = alpha;
  return estimate_rank_from_spectrum(ctx);
}

RankEstimate estimate_rank(const Matrix& jacobian, double alpha, double theta_pre, std::optional<double> n_override) {
  require_valid(jacobian, "estimate_rank");
  const double n = n_override.value_or(static_cast<double>(jacobian.cols()));
  return estimate_rank_from_singular_values(singular_values(jacobian), n, alpha, theta_pre);
}

std::size_t DimensionSurvey::failures() const {
  return static_cast<std::size_t>(std::count_if(errors.begin(), errors.end(), [](const auto& e) { return !e.empty(); }));
}

std::size_t DimensionSurvey::mode() const {
  if (histogram.empty()) throw EmptySpectrum("dimension_survey: no successful estimates");
  auto best = histogram.begin();
  for (auto it = histogram.begin(); it != histogram.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

DimensionSurvey dimension_survey(const std::vector<Matrix>& jacobians, double alpha, double theta_pre) {
  if (jacobians.empty()) throw InputError("dimension_survey: empty input");
  DimensionSurvey survey;
  survey.estimates.resize(jacobians.size());
  survey.errors.resize(jacobians.size());
  for (std::size_t i = 0; i < jacobians.size(); ++i) {
    try {
      survey.estimates[i] = estimate_rank(jacobians[i], alpha, theta_pre);
      ++survey.histogram[survey.estimates[i]->rank];
    } catch (const Error& e) {
      survey.errors[i] = e.what();
    }
  }
  return survey;
}

}  // namespace latdim
