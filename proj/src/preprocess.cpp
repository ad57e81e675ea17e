#include "rvcontrib/preprocess.hpp"

#include <Eigen/QR>
#include <cmath>

#include "internal.hpp"

namespace rvc {

namespace detail {

Matrix correlation_from_standardized(const Matrix& xs, const Matrix& ys) {
  Matrix r = xs.transpose() * ys / static_cast<double>(xs.rows() - 1);
  for (Index j = 0; j < r.cols(); ++j) {
    for (Index i = 0; i < r.rows(); ++i) {
      double& v = r(i, j);
      if (v > 1.0) {
        if (v > 1.0 + kClampSlack)
          throw DataError("correlation " + std::to_string(v) +
                          " out of range; inputs are not standardized");
        v = 1.0;
      } else if (v < -1.0) {
        if (v < -1.0 - kClampSlack)
          throw DataError("correlation " + std::to_string(v) +
                          " out of range; inputs are not standardized");
        v = -1.0;
      }
    }
  }
  return r;
}

}  // namespace detail

namespace {

void check_same_rows(const std::vector<std::string>& a,
                     const std::vector<std::string>& b) {
  if (a.size() != b.size())
    throw RowMismatchError("row counts " + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i])
      throw RowMismatchError("row " + std::to_string(i + 1) + ": '" + a[i] +
                             "' vs '" + b[i] + "'");
  }
}

}  // namespace

// A column counts as constant when its spread is rounding residue of its own
// magnitude (repeated 1/3 centers to ~1e-17, not to exactly zero).
constexpr double kConstantRelTol = 1e-14;

StandardizedMatrix standardize_columns(const DataMatrix& m) {
  const Matrix& v = m.values();
  const Index n = v.rows();
  Matrix out(n, v.cols());
  for (Index j = 0; j < v.cols(); ++j) {
    const double mean = v.col(j).mean();
    const double ss = (v.col(j).array() - mean).matrix().squaredNorm();
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double scale = v.col(j).cwiseAbs().maxCoeff();
    if (!(sd > kConstantRelTol * scale) || !std::isfinite(1.0 / sd))
      throw ConstantColumnError(m.col_names()[static_cast<std::size_t>(j)]);
    out.col(j) = (v.col(j).array() - mean) / sd;
    // second centering pass removes the rounding residue left by the first
    out.col(j).array() -= out.col(j).mean();
  }
  return StandardizedMatrix(
      DataMatrix(std::move(out), m.row_ids(), m.col_names()));
}

DataMatrix residualize(const DataMatrix& m) {
  Matrix out = m.values().rowwise() - m.values().colwise().mean();
  out.rowwise() -= out.colwise().mean();
  return DataMatrix(std::move(out), m.row_ids(), m.col_names());
}

DataMatrix residualize(const DataMatrix& m, const DataMatrix& confounders) {
  check_same_rows(m.row_ids(), confounders.row_ids());
  const Index n = m.rows();
  const Index zc = confounders.cols();
  if (n <= zc + 1)
    throw std::invalid_argument(
        "residualize needs more rows than confounder columns plus intercept");

  Matrix design(n, zc + 1);
  design.col(0).setOnes();
  design.rightCols(zc) = confounders.values();

  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  if (qr.rank() < design.cols()) throw RankDeficientConfoundersError();

  Matrix coef = qr.solve(m.values());
  Matrix resid = m.values() - design * coef;
  resid.rowwise() -= resid.colwise().mean();

  // Columns the projection annihilates keep only solver rounding noise; snap
  // them to exact zeros so standardization can call them out as constant
  // rather than quietly correlating noise. The floor term covers columns that
  // were constant before projection (their centered norm is already ~0).
  constexpr double kProjectionTol = 1e-10;
  constexpr double kScaleFloor = 1e-14;
  for (Index j = 0; j < resid.cols(); ++j) {
    const double centered_norm =
        (m.values().col(j).array() - m.values().col(j).mean())
            .matrix()
            .norm();
    const double keep_above = kProjectionTol * centered_norm +
                              kScaleFloor * m.values().col(j).norm();
    if (resid.col(j).norm() <= keep_above) resid.col(j).setZero();
  }
  return DataMatrix(std::move(resid), m.row_ids(), m.col_names());
}

CorrelationMatrix pairwise_correlation(const StandardizedMatrix& xs,
                                       const StandardizedMatrix& ys) {
  check_same_rows(xs.row_ids(), ys.row_ids());
  return CorrelationMatrix{
      detail::correlation_from_standardized(xs.values(), ys.values()),
      xs.col_names(), ys.col_names()};
}

}  // namespace rvc
