#include "rvcontrib/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "internal.hpp"
#include "rvcontrib/errors.hpp"

namespace rvc {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

bool is_missing_token(std::string_view token) {
  if (token.empty()) return true;
  auto lower = [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  };
  std::string t;
  t.reserve(token.size());
  for (char c : token) t.push_back(lower(c));
  return t == "na" || t == "nan";
}

// row/col are 1-based coordinates of the cell in the file (header is row 1).
double parse_cell(const std::string& token, Index row, Index col) {
  if (is_missing_token(token)) throw MissingValueError(row, col);
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ParseError(row, col, "'" + token + "' is not a finite number");
  return value;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

DataMatrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading", path);

  std::string line;
  if (!std::getline(in, line))
    throw ParseError(1, 1, "file is empty; a header row is required");
  strip_cr(line);

  std::vector<std::string> header = split_line(line);
  const bool has_id = !header.empty() && header.front() == "id";
  const std::size_t skip = has_id ? 1 : 0;
  if (header.size() <= skip)
    throw ParseError(1, 1, "header declares no data columns");
  std::vector<std::string> col_names(header.begin() +
                                         static_cast<std::ptrdiff_t>(skip),
                                     header.end());

  std::vector<std::string> row_ids;
  std::vector<double> cells;
  Index file_row = 1;
  while (std::getline(in, line)) {
    ++file_row;
    strip_cr(line);
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != header.size())
      throw RaggedRowError(file_row, static_cast<long>(header.size()),
                           static_cast<long>(fields.size()));
    row_ids.push_back(has_id ? fields.front()
                             : std::to_string(file_row - 1));
    for (std::size_t j = skip; j < fields.size(); ++j)
      cells.push_back(
          parse_cell(fields[j], file_row, static_cast<Index>(j + 1)));
  }
  if (in.bad()) throw IoError("read failure", path);

  const Index n = static_cast<Index>(row_ids.size());
  const Index p = static_cast<Index>(col_names.size());
  if (n < 2)
    throw DataError("'" + path + "' holds " + std::to_string(n) +
                    " data rows; at least 2 are required");
  Matrix values(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j)
      values(i, j) = cells[static_cast<std::size_t>(i * p + j)];
  return DataMatrix(values, std::move(row_ids), std::move(col_names));
}

void write_matrix_csv(const DataMatrix& m, const std::string& path) {
  std::ostringstream out;
  out << "id";
  for (const auto& name : m.col_names()) out << ',' << name;
  out << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    out << m.row_ids()[static_cast<std::size_t>(i)];
    for (Index j = 0; j < m.cols(); ++j)
      out << ',' << detail::format_double(m.values()(i, j));
    out << '\n';
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open for writing", path);
  const std::string text = out.str();
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw IoError("write failure", path);
}

}  // namespace rvc
