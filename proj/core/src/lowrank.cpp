#include "latdim/lowrank.hpp"

#include "latdim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace latdim {

namespace {

void require_positive_gamma(double gamma, const char* op) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw OutOfRange(std::string(op) + ": gamma must be positive and finite");
  }
}

Matrix singular_value_threshold(const Matrix& m, double tau) {
  const SvdFactors f = svd(m);
  const Vector shrunk = (f.singular_values.array() - tau).max(0.0).matrix();
  return f.left * shrunk.asDiagonal() * f.right.transpose();
}

Matrix soft_threshold(const Matrix& m, double tau) {
  return m.unaryExpr([tau](double x) { return x > tau ? x - tau : (x < -tau ? x + tau : 0.0); });
}

}  // namespace

Matrix nnp_denoise(const Matrix& m, double gamma) {
  require_positive_gamma(gamma, "nnp_denoise");
  return singular_value_threshold(m, 1.0 / (2.0 * gamma));
}

double nnp_objective(const Matrix& m, double gamma, const Matrix& l) {
  return nuclear_norm(l) + gamma * (m - l).squaredNorm();
}

NnpCheck nnp_optimality_check(const Matrix& m, double gamma, const Matrix& l_star) {
  if (m.rows() != l_star.rows() || m.cols() != l_star.cols()) {
    throw DimensionMismatch("nnp_optimality_check: shapes differ");
  }
  const Matrix z = 2.0 * gamma * (m - l_star);
  const double z_norm = spectral_norm(z);
  const double l_nuclear = nuclear_norm(l_star);
  const double inner = (z.array() * l_star.array()).sum();

  NnpCheck check;
  check.spectral_excess = std::max(z_norm - 1.0, 0.0);
  check.inner_product_gap = std::abs(inner - l_nuclear) / std::max(l_nuclear, 1.0);
  check.pass = z_norm <= 1.0 + 1e-8 && check.inner_product_gap <= 1e-6;
  return check;
}

PcpResult pcp_decompose(const Matrix& m, double gamma, const PcpOptions& options) {
  require_valid(m, "pcp_decompose");
  require_positive_gamma(gamma, "pcp_decompose");

  PcpResult out;
  out.low_rank = Matrix::Zero(m.rows(), m.cols());
  out.sparse = Matrix::Zero(m.rows(), m.cols());

  const double m_l1 = m.cwiseAbs().sum();
  const double m_fro = m.norm();
  if (m_l1 == 0.0) {
    out.converged = true;
    return out;
  }

  if (!(options.penalty_growth >= 1.0) || !(options.penalty_cap >= 1.0)) {
    throw OutOfRange("pcp_decompose: penalty growth and cap must be >= 1");
  }
  const double mu0 = 0.25 * static_cast<double>(m.rows() * m.cols()) / m_l1;
  const double mu_max = mu0 * options.penalty_cap;
  double mu = mu0;
  Matrix dual = Matrix::Zero(m.rows(), m.cols());
  Matrix sparse = Matrix::Zero(m.rows(), m.cols());
  out.primal_residual = m_fro;

  // A non-converged run reports the iterate with the smallest residual.
  for (int it = 1; it <= options.max_iter; ++it) {
    const Matrix low = singular_value_threshold(m - sparse + dual / mu, 1.0 / mu);
    sparse = soft_threshold(m - low + dual / mu, gamma / mu);
    const Matrix gap = m - low - sparse;
    dual += mu * gap;
    mu = std::min(mu * options.penalty_growth, mu_max);

    const double residual = gap.norm();
    out.iterations = it;
    if (!std::isfinite(residual)) break;
    if (residual <= out.primal_residual) {
      out.low_rank = low;
      out.sparse = sparse;
      out.primal_residual = residual;
    }
    if (residual <= options.tol * m_fro) {
      out.converged = true;
      break;
    }
  }
  return out;
}

std::size_t numerical_rank(const Matrix& m, double rel_tol) {
  const Vector sv = singular_values(m);
  if (!(sv(0) > 0.0)) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++r;
  }
  return r;
}

std::vector<SweepRow> sparsity_sweep(const Matrix& m, const std::vector<double>& n_grid, const PcpOptions& options) {
  if (n_grid.empty()) throw InputError("sparsity_sweep: empty grid");
  const double m_fro = m.norm();
  std::vector<SweepRow> rows;
  rows.reserve(n_grid.size());
  for (double n : n_grid) {
    if (!(n > 0.0)) throw OutOfRange("sparsity_sweep: grid values must be positive");
    const PcpResult r = pcp_decompose(m, 1.0 / n, options);
    SweepRow row;
    row.n_inverse_gamma = n;
    row.estimated_rank = numerical_rank(r.low_rank);
    row.corruption_ratio = m_fro > 0.0 ? r.sparse.norm() / m_fro : 0.0;
    row.iterations = r.iterations;
    row.converged = r.converged;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace latdim
