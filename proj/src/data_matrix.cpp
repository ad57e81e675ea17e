#include "rvcontrib/data_matrix.hpp"

#include <cmath>
#include <unordered_set>

namespace rvc {

namespace {

void check_unique(const std::vector<std::string>& names, const char* what) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(names.size());
  for (const auto& name : names) {
    if (!seen.insert(name).second)
      throw DuplicateNameError(std::string(what) + " " + name);
  }
}

}  // namespace

DataMatrix::DataMatrix(Matrix values, std::vector<std::string> row_ids,
                       std::vector<std::string> col_names)
    : values_(std::move(values)),
      row_ids_(std::move(row_ids)),
      col_names_(std::move(col_names)) {
  if (values_.rows() < 2)
    throw DataError("matrix needs at least 2 rows, got " +
                    std::to_string(values_.rows()));
  if (values_.cols() < 1) throw DataError("matrix needs at least 1 column");
  if (static_cast<Index>(row_ids_.size()) != values_.rows())
    throw DataError("row id count does not match row count");
  if (static_cast<Index>(col_names_.size()) != values_.cols())
    throw DataError("column name count does not match column count");
  if (!values_.allFinite()) throw DataError("matrix contains non-finite values");
  check_unique(row_ids_, "row id");
  check_unique(col_names_, "column name");
}

DataMatrix DataMatrix::with_default_names(Matrix values,
                                          const std::string& col_prefix) {
  std::vector<std::string> ids(static_cast<std::size_t>(values.rows()));
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = std::to_string(i + 1);
  std::vector<std::string> names(static_cast<std::size_t>(values.cols()));
  for (std::size_t j = 0; j < names.size(); ++j)
    names[j] = col_prefix + std::to_string(j + 1);
  return DataMatrix(std::move(values), std::move(ids), std::move(names));
}

Index DataMatrix::find_column(const std::string& name) const {
  for (std::size_t j = 0; j < col_names_.size(); ++j)
    if (col_names_[j] == name) return static_cast<Index>(j);
  return -1;
}

StandardizedMatrix::StandardizedMatrix(DataMatrix m) : m_(std::move(m)) {
  const Matrix& v = m_.values();
  const double n1 = static_cast<double>(v.rows() - 1);
  for (Index j = 0; j < v.cols(); ++j) {
    const double mean = v.col(j).mean();
    if (std::abs(mean) >= kMeanTolerance)
      throw DataError("column " + m_.col_names()[static_cast<std::size_t>(j)] +
                      " is not centered (mean " + std::to_string(mean) + ")");
    const double sd = std::sqrt(v.col(j).squaredNorm() / n1);
    if (std::abs(sd - 1.0) >= kSdTolerance)
      throw DataError("column " + m_.col_names()[static_cast<std::size_t>(j)] +
                      " does not have unit standard deviation (sd " +
                      std::to_string(sd) + ")");
  }
}

}  // namespace rvc
