#pragma once

#include <string>

#include "rvcontrib/data_matrix.hpp"

namespace rvc {

/// Read a numeric matrix from CSV: UTF-8, comma delimiter, '.' decimal point,
/// first row is the header. A first column named "id" supplies row ids,
/// otherwise rows are numbered from 1. Empty cells and NA/NaN tokens raise
/// MissingValueError; any other token that does not parse to a finite real
/// raises ParseError with its 1-based coordinates.
DataMatrix load_matrix_csv(const std::string& path);

/// Write a matrix as CSV with an "id" column. Doubles use the shortest
/// representation that round-trips exactly, so load(write(m)) == m bit for
/// bit and equal matrices serialize to identical bytes.
void write_matrix_csv(const DataMatrix& m, const std::string& path);

}  // namespace rvc
