#pragma once

#include <vector>

#include "rvcontrib/data_matrix.hpp"

namespace rvc {

/// One nonzero entry of a coefficient matrix. Indices are 1-based, matching
/// the usual statistical notation (B_{30,1} is row=30, col=1).
struct CoefficientEntry {
  Index row = 1;
  Index col = 1;
  double value = 0.0;
};

/// Parameters of the linear model Y = X B + E with X ~ MVN(0, sigma_x) and
/// E ~ MVN(0, sigma_e). Both covariance matrices must be symmetric positive
/// definite; coefficients are a sparse list of the nonzero entries of B.
struct LinearModelSpec {
  Index p = 1;
  Index q = 1;
  Matrix sigma_x;
  Matrix sigma_e;
  std::vector<CoefficientEntry> coefficients;
};

/// Throws NotPositiveDefiniteError / IndexOutOfRangeError on a bad spec.
void validate(const LinearModelSpec& spec);

struct PopulationCovariance {
  Matrix xx;  // Cov(X, X) = sigma_x
  Matrix xy;  // Cov(X, Y) = sigma_x * B
  Matrix yy;  // Cov(Y, Y) = B' * sigma_x * B + sigma_e
};

/// Closed-form covariance blocks of (X, Y) under the linear model.
PopulationCovariance population_covariance(const LinearModelSpec& spec);

/// Cov(X, Y) only.
Matrix population_cross_covariance(const LinearModelSpec& spec);

/// Population RV: total squared cross covariance over the geometric mean of
/// the total squared within-set covariances, from the closed-form blocks.
double population_rv(const LinearModelSpec& spec);

/// Population contribution of each explanatory variable.
///
/// standardized == false evaluates, per variable k,
///   sum over l of { beta_kl Var(X_k) + sum_{k' != k} beta_k'l Cov(X_k, X_k') }^2.
/// standardized == true uses the same form with standardized coefficients
/// beta*_kl = beta_kl SD(X_k)/SD(Y_l) and correlations in place of
/// covariances, with SD(Y_l) taken from the closed-form Cov(Y, Y).
std::vector<double> population_contributions(const LinearModelSpec& spec,
                                             bool standardized);

}  // namespace rvc
