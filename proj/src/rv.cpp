#include "rvcontrib/rv.hpp"

#include <stdexcept>

#include "internal.hpp"

namespace rvc {

namespace detail {

void require_positive_alpha(int alpha) {
  if (alpha < 1)
    throw std::invalid_argument("alpha must be a positive integer, got " +
                                std::to_string(alpha));
}

double powered_sum(const Matrix& r, int alpha) {
  double total = 0.0;
  for (Index j = 0; j < r.cols(); ++j)
    for (Index i = 0; i < r.rows(); ++i)
      total += pow_int(r(i, j) * r(i, j), alpha);
  return total;
}

void row_powered_sums(const Matrix& r, int alpha, std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(r.rows()), 0.0);
  for (Index j = 0; j < r.cols(); ++j)
    for (Index i = 0; i < r.rows(); ++i)
      out[static_cast<std::size_t>(i)] += pow_int(r(i, j) * r(i, j), alpha);
}

}  // namespace detail

namespace {

Matrix sample_covariance(const Matrix& a, const Matrix& b) {
  Matrix ac = a.rowwise() - a.colwise().mean();
  Matrix bc = b.rowwise() - b.colwise().mean();
  return ac.transpose() * bc / static_cast<double>(a.rows() - 1);
}

void check_paired(const DataMatrix& x, const DataMatrix& y) {
  if (x.row_ids() != y.row_ids())
    throw RowMismatchError("the two matrices must share rows in order");
}

}  // namespace

void ContributionProfile::set_threshold(double t) {
  threshold = t;
  flagged.clear();
  for (std::size_t k = 0; k < contributions.size(); ++k)
    if (contributions[k] > t) flagged.push_back(static_cast<Index>(k));
}

std::vector<std::string> ContributionProfile::flagged_names() const {
  std::vector<std::string> names;
  names.reserve(flagged.size());
  for (Index k : flagged)
    names.push_back(variable_names[static_cast<std::size_t>(k)]);
  return names;
}

double rv_coefficient(const DataMatrix& x, const DataMatrix& y) {
  check_paired(x, y);
  const Matrix cxy = sample_covariance(x.values(), y.values());
  const Matrix cxx = sample_covariance(x.values(), x.values());
  const Matrix cyy = sample_covariance(y.values(), y.values());
  const double den = std::sqrt(cxx.squaredNorm() * cyy.squaredNorm());
  if (!(den > 0.0))
    throw DegenerateDenominatorError(
        "a matrix has zero total squared covariance");
  return cxy.squaredNorm() / den;
}

double modified_rv_statistic(const StandardizedMatrix& xs,
                             const StandardizedMatrix& ys, int alpha) {
  detail::require_positive_alpha(alpha);
  check_paired(xs.as_data_matrix(), ys.as_data_matrix());
  const Matrix r =
      detail::correlation_from_standardized(xs.values(), ys.values());
  return detail::powered_sum(r, alpha);
}

ContributionProfile contributions(const StandardizedMatrix& xs,
                                  const StandardizedMatrix& ys, int alpha) {
  detail::require_positive_alpha(alpha);
  check_paired(xs.as_data_matrix(), ys.as_data_matrix());
  const Matrix r =
      detail::correlation_from_standardized(xs.values(), ys.values());
  ContributionProfile profile;
  profile.alpha = alpha;
  profile.variable_names = xs.col_names();
  detail::row_powered_sums(r, alpha, profile.contributions);
  return profile;
}

std::vector<double> per_response_profile(const StandardizedMatrix& xs,
                                         const StandardizedMatrix& ys, Index k,
                                         int alpha) {
  detail::require_positive_alpha(alpha);
  check_paired(xs.as_data_matrix(), ys.as_data_matrix());
  if (k < 0 || k >= xs.cols())
    throw IndexOutOfRangeError("variable index " + std::to_string(k) +
                               " with p = " + std::to_string(xs.cols()));
  const Matrix r = detail::correlation_from_standardized(
      xs.values().col(k), ys.values());
  std::vector<double> out(static_cast<std::size_t>(ys.cols()));
  for (Index l = 0; l < ys.cols(); ++l)
    out[static_cast<std::size_t>(l)] =
        detail::pow_int(r(0, l) * r(0, l), alpha);
  return out;
}

}  // namespace rvc
