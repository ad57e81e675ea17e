#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rvcontrib/data_matrix.hpp"

namespace rvc {

/// Per-variable decomposition of the powered RV statistic at a given power.
/// contributions[k] is the sum over responses of cor^(2*alpha)(x_k, y_l);
/// flagged lists the indices whose contribution strictly exceeds the
/// threshold (empty while no threshold is attached).
struct ContributionProfile {
  int alpha = 1;
  std::vector<double> contributions;
  std::vector<std::string> variable_names;
  std::optional<double> threshold;
  std::vector<Index> flagged;

  /// Attach a permutation threshold and recompute the flagged set.
  void set_threshold(double t);

  std::vector<std::string> flagged_names() const;
};

/// RV coefficient between two raw data matrices: the ratio of total squared
/// cross covariance to the geometric mean of the total squared within-set
/// covariances (n-1 divisor throughout). Always in [0, 1] up to rounding.
double rv_coefficient(const DataMatrix& x, const DataMatrix& y);

/// Sum over all column pairs of cor^(2*alpha); the unnormalized powered RV
/// statistic used by the permutation tests. alpha is a positive integer.
double modified_rv_statistic(const StandardizedMatrix& xs,
                             const StandardizedMatrix& ys, int alpha);

/// Per-variable contributions at power alpha (threshold not attached).
/// Summing the result over variables gives modified_rv_statistic.
ContributionProfile contributions(const StandardizedMatrix& xs,
                                  const StandardizedMatrix& ys, int alpha);

/// Breakdown of variable k's contribution across responses: entry l is
/// cor^(2*alpha)(x_k, y_l).
std::vector<double> per_response_profile(const StandardizedMatrix& xs,
                                         const StandardizedMatrix& ys, Index k,
                                         int alpha);

}  // namespace rvc
