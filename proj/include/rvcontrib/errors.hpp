#pragma once

#include <stdexcept>
#include <string>

namespace rvc {

/// Base class of every recoverable failure raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with the content of the data (the CLI maps these to exit code 2).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Filesystem problems, always carrying the offending path (CLI exit code 3).
class IoError : public Error {
 public:
  IoError(const std::string& what, std::string path)
      : Error(what + ": " + path), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A zero-variance column that cannot be standardized.
class ConstantColumnError : public DataError {
 public:
  explicit ConstantColumnError(std::string column)
      : DataError("constant column cannot be standardized: " + column),
        column_(std::move(column)) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class RowMismatchError : public DataError {
 public:
  explicit RowMismatchError(const std::string& detail)
      : DataError("row identifiers do not match: " + detail) {}
};

class RankDeficientConfoundersError : public DataError {
 public:
  RankDeficientConfoundersError()
      : DataError("confounder design matrix (with intercept) is rank deficient") {}
};

class DegenerateDenominatorError : public DataError {
 public:
  explicit DegenerateDenominatorError(const std::string& detail)
      : DataError("degenerate denominator: " + detail) {}
};

class IndexOutOfRangeError : public DataError {
 public:
  explicit IndexOutOfRangeError(const std::string& detail)
      : DataError("index out of range: " + detail) {}
};

class EmptyGridError : public DataError {
 public:
  EmptyGridError() : DataError("power grid must not be empty") {}
};

class NotPositiveDefiniteError : public DataError {
 public:
  explicit NotPositiveDefiniteError(const std::string& detail)
      : DataError("matrix is not positive definite: " + detail) {}
};

class OverlappingBlocksError : public DataError {
 public:
  explicit OverlappingBlocksError(const std::string& detail)
      : DataError("covariance blocks overlap: " + detail) {}
};

/// CSV ingestion failures carry 1-based file coordinates (header is row 1).
class ParseError : public DataError {
 public:
  ParseError(long row, long col, const std::string& detail)
      : DataError("parse error at row " + std::to_string(row) + ", column " +
                  std::to_string(col) + ": " + detail),
        row_(row),
        col_(col) {}
  long row() const { return row_; }
  long col() const { return col_; }

 private:
  long row_, col_;
};

class RaggedRowError : public DataError {
 public:
  RaggedRowError(long row, long expected, long got)
      : DataError("row " + std::to_string(row) + " has " + std::to_string(got) +
                  " fields, expected " + std::to_string(expected)),
        row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

class MissingValueError : public DataError {
 public:
  MissingValueError(long row, long col)
      : DataError("missing value at row " + std::to_string(row) + ", column " +
                  std::to_string(col)),
        row_(row),
        col_(col) {}
  long row() const { return row_; }
  long col() const { return col_; }

 private:
  long row_, col_;
};

class DuplicateNameError : public DataError {
 public:
  explicit DuplicateNameError(std::string name)
      : DataError("duplicate name: " + name), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace rvc
