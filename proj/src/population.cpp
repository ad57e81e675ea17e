#include "rvcontrib/population.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "internal.hpp"
#include "rvcontrib/errors.hpp"

namespace rvc {

namespace {

void check_spd(const Matrix& m, const char* label) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(label) + " must be square");
  if (!m.allFinite())
    throw std::invalid_argument(std::string(label) + " has non-finite entries");
  if (!m.isApprox(m.transpose(), 1e-12))
    throw NotPositiveDefiniteError(std::string(label) + " is not symmetric");
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefiniteError(std::string(label) +
                                   " is not positive definite");
}

Matrix dense_coefficients(const LinearModelSpec& spec) {
  Matrix b = Matrix::Zero(spec.p, spec.q);
  for (const auto& entry : spec.coefficients)
    b(entry.row - 1, entry.col - 1) += entry.value;
  return b;
}

}  // namespace

void validate(const LinearModelSpec& spec) {
  if (spec.p < 1 || spec.q < 1)
    throw std::invalid_argument("model dimensions must be positive");
  if (spec.sigma_x.rows() != spec.p)
    throw std::invalid_argument("sigma_x must be p x p");
  if (spec.sigma_e.rows() != spec.q)
    throw std::invalid_argument("sigma_e must be q x q");
  check_spd(spec.sigma_x, "sigma_x");
  check_spd(spec.sigma_e, "sigma_e");
  for (const auto& entry : spec.coefficients) {
    if (entry.row < 1 || entry.row > spec.p || entry.col < 1 ||
        entry.col > spec.q)
      throw IndexOutOfRangeError("coefficient entry (" +
                                 std::to_string(entry.row) + ", " +
                                 std::to_string(entry.col) +
                                 ") falls outside the p x q grid");
    if (!std::isfinite(entry.value))
      throw std::invalid_argument("coefficient values must be finite");
  }
}

PopulationCovariance population_covariance(const LinearModelSpec& spec) {
  validate(spec);
  const Matrix b = dense_coefficients(spec);
  PopulationCovariance cov;
  cov.xx = spec.sigma_x;
  cov.xy = spec.sigma_x * b;
  cov.yy = b.transpose() * spec.sigma_x * b + spec.sigma_e;
  return cov;
}

Matrix population_cross_covariance(const LinearModelSpec& spec) {
  validate(spec);
  return spec.sigma_x * dense_coefficients(spec);
}

double population_rv(const LinearModelSpec& spec) {
  const PopulationCovariance cov = population_covariance(spec);
  const double den =
      std::sqrt(cov.xx.squaredNorm() * cov.yy.squaredNorm());
  if (!(den > 0.0))
    throw DegenerateDenominatorError(
        "population covariance norms vanish; the coefficient is undefined");
  return cov.xy.squaredNorm() / den;
}

std::vector<double> population_contributions(const LinearModelSpec& spec,
                                             bool standardized) {
  const PopulationCovariance cov = population_covariance(spec);
  const Matrix b = dense_coefficients(spec);

  std::vector<double> scale_x(static_cast<std::size_t>(spec.p), 1.0);
  std::vector<double> scale_y(static_cast<std::size_t>(spec.q), 1.0);
  if (standardized) {
    for (Index k = 0; k < spec.p; ++k)
      scale_x[static_cast<std::size_t>(k)] = std::sqrt(cov.xx(k, k));
    for (Index l = 0; l < spec.q; ++l)
      scale_y[static_cast<std::size_t>(l)] = std::sqrt(cov.yy(l, l));
  }

  // Per variable k and response l: own-variance term plus the spillover
  // through the covariance of X_k with every other coefficient-bearing
  // variable, rescaled to correlations when standardized, squared and
  // accumulated over responses.
  std::vector<double> out(static_cast<std::size_t>(spec.p), 0.0);
  for (Index k = 0; k < spec.p; ++k) {
    const double dk = scale_x[static_cast<std::size_t>(k)];
    double total = 0.0;
    for (Index l = 0; l < spec.q; ++l) {
      const double dl = scale_y[static_cast<std::size_t>(l)];
      double term = b(k, l) * cov.xx(k, k);
      for (Index k2 = 0; k2 < spec.p; ++k2) {
        if (k2 == k) continue;
        term += b(k2, l) * cov.xx(k, k2);
      }
      term /= dk * dl;
      total += term * term;
    }
    out[static_cast<std::size_t>(k)] = total;
  }
  return out;
}

}  // namespace rvc
