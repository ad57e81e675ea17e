#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "rvcontrib/errors.hpp"

namespace rvc {

using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Dense n x m numeric matrix with row identifiers and column names.
///
/// Construction validates the full invariant set: n >= 2, m >= 1, every entry
/// finite, row ids unique, column names unique. Values are immutable after
/// construction, so instances are safe to share across threads.
class DataMatrix {
 public:
  DataMatrix(Matrix values, std::vector<std::string> row_ids,
             std::vector<std::string> col_names);

  /// Convenience constructor: row ids "1".."n", column names prefix+"1"..
  static DataMatrix with_default_names(Matrix values,
                                       const std::string& col_prefix = "V");

  const Matrix& values() const { return values_; }
  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::vector<std::string>& col_names() const { return col_names_; }
  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }

  /// Index of a named column, or -1 if absent.
  Index find_column(const std::string& name) const;

 private:
  Matrix values_;
  std::vector<std::string> row_ids_;
  std::vector<std::string> col_names_;
};

/// A DataMatrix whose columns all have mean 0 and sample standard deviation 1
/// (n-1 divisor). The constructor verifies |mean| < 1e-10 and |sd - 1| < 1e-10
/// for every column; use standardize_columns() to produce one from raw data.
class StandardizedMatrix {
 public:
  static constexpr double kMeanTolerance = 1e-10;
  static constexpr double kSdTolerance = 1e-10;

  explicit StandardizedMatrix(DataMatrix m);

  const Matrix& values() const { return m_.values(); }
  const std::vector<std::string>& row_ids() const { return m_.row_ids(); }
  const std::vector<std::string>& col_names() const { return m_.col_names(); }
  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }

  const DataMatrix& as_data_matrix() const { return m_; }

 private:
  DataMatrix m_;
};

/// p x q matrix of pairwise Pearson correlations, entries within [-1, 1]
/// (1e-12 slack absorbed at construction time by the producing operation).
struct CorrelationMatrix {
  Matrix values;
  std::vector<std::string> x_names;
  std::vector<std::string> y_names;
};

}  // namespace rvc
