#pragma once

#include "rvcontrib/data_matrix.hpp"

namespace rvc {

/// Rescale every column to mean 0, sample standard deviation 1 (n-1 divisor).
/// Column order and names are preserved. Throws ConstantColumnError for a
/// zero-variance column; "zero" is judged relative to the column's own
/// magnitude, so a column of repeated 1/3 counts as constant even though its
/// centered values carry rounding residue.
StandardizedMatrix standardize_columns(const DataMatrix& m);

/// Intercept-only residualization, i.e. column centering.
DataMatrix residualize(const DataMatrix& m);

/// Replace each column of m by its least-squares residual on
/// [intercept, confounders]. Solved by column-pivoted Householder QR.
/// Requires matching row ids, a full-rank design and n > cols(Z) + 1.
/// A column the confounders explain completely comes back as exact zeros
/// (the sub-rounding residue is noise, not data), so standardizing it
/// reports ConstantColumnError instead of manufacturing correlations.
DataMatrix residualize(const DataMatrix& m, const DataMatrix& confounders);

/// Pairwise Pearson correlations between columns of two standardized
/// matrices; entry (k, l) is cor(x_k, y_l). Equals the n-1 divisor cross
/// covariance because the inputs are standardized.
CorrelationMatrix pairwise_correlation(const StandardizedMatrix& xs,
                                       const StandardizedMatrix& ys);

}  // namespace rvc
