#pragma once

// Internal kernels shared by the metric and permutation code paths.

#include <charconv>
#include <cstdio>
#include <string>

#include "rvcontrib/data_matrix.hpp"

namespace rvc::detail {

// x^n for integer n >= 0 by binary exponentiation; bit-stable across
// platforms, unlike std::pow with a double exponent.
inline double pow_int(double x, int n) {
  double result = 1.0;
  while (n > 0) {
    if (n & 1) result *= x;
    x *= x;
    n >>= 1;
  }
  return result;
}

// Correlation matrix of two standardized column sets: x' * y / (n - 1).
// Rounding can push an entry a hair past +-1; overshoot up to kClampSlack is
// clamped back, anything larger means the inputs were not standardized.
inline constexpr double kClampSlack = 1e-8;

Matrix correlation_from_standardized(const Matrix& xs, const Matrix& ys);

// Sum over all entries of r^(2*alpha), column-major accumulation order.
double powered_sum(const Matrix& r, int alpha);

// Per-row sums of r^(2*alpha), accumulated column-major into out.
void row_powered_sums(const Matrix& r, int alpha, std::vector<double>& out);

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void require_positive_alpha(int alpha);

}  // namespace rvc::detail
