#include "rvcontrib/simulation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

#include "rvcontrib/errors.hpp"

namespace rvc {

namespace {

void check_blocks(Index dim, const std::vector<BlockSpec>& blocks) {
  std::vector<BlockSpec> by_lo = blocks;
  std::sort(by_lo.begin(), by_lo.end(),
            [](const BlockSpec& a, const BlockSpec& b) { return a.lo < b.lo; });
  Index prev_hi = 0;
  for (const auto& block : by_lo) {
    if (block.lo < 1 || block.hi > dim || block.lo > block.hi)
      throw IndexOutOfRangeError("block [" + std::to_string(block.lo) + ", " +
                                 std::to_string(block.hi) +
                                 "] falls outside 1.." + std::to_string(dim));
    if (block.lo <= prev_hi)
      throw OverlappingBlocksError("blocks overlap at index " +
                                   std::to_string(block.lo));
    prev_hi = block.hi;
    const Index m = block.hi - block.lo + 1;
    if (m > 1 && !(block.off_diagonal > -1.0 / static_cast<double>(m - 1) &&
                   block.off_diagonal < 1.0))
      throw NotPositiveDefiniteError(
          "equicorrelated block of size " + std::to_string(m) +
          " needs its off-diagonal inside (-1/" + std::to_string(m - 1) +
          ", 1)");
  }
}

std::vector<std::string> numbered(Index n) {
  std::vector<std::string> ids(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    ids[static_cast<std::size_t>(i)] = std::to_string(i + 1);
  return ids;
}

std::vector<std::string> prefixed(const std::string& prefix, Index n) {
  std::vector<std::string> names(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    names[static_cast<std::size_t>(i)] = prefix + std::to_string(i + 1);
  return names;
}

}  // namespace

Matrix build_block_covariance(Index dim,
                              const std::vector<BlockSpec>& blocks) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  check_blocks(dim, blocks);
  Matrix sigma = Matrix::Identity(dim, dim);
  for (const auto& block : blocks) {
    for (Index i = block.lo - 1; i < block.hi; ++i)
      for (Index j = block.lo - 1; j < block.hi; ++j)
        if (i != j) sigma(i, j) = block.off_diagonal;
  }
  return sigma;
}

Matrix sample_mvn(Index n, const Matrix& sigma, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample size must be positive");
  if (sigma.rows() != sigma.cols())
    throw std::invalid_argument("covariance must be square");
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefiniteError("covariance is not positive definite");
  const Matrix chol = llt.matrixL();
  Matrix z(n, sigma.cols());
  for (Index j = 0; j < z.cols(); ++j)
    for (Index i = 0; i < n; ++i) z(i, j) = rng.standard_normal();
  return z * chol.transpose();
}

Matrix sample_mvn(Index n, const Matrix& sigma, std::uint64_t seed) {
  Rng rng(stream_seed(seed, 0));
  return sample_mvn(n, sigma, rng);
}

Dataset generate_dataset(const SimulationSpec& spec) {
  const LinearModelSpec model = population_model(spec);
  validate(model);
  if (spec.n < 2)
    throw std::invalid_argument("need at least 2 rows to form a dataset");

  Rng rng(stream_seed(spec.seed, 0));
  const Matrix x = sample_mvn(spec.n, model.sigma_x, rng);
  const Matrix e = sample_mvn(spec.n, model.sigma_e, rng);

  Matrix b = Matrix::Zero(spec.p, spec.q);
  for (const auto& entry : spec.coefficients)
    b(entry.row - 1, entry.col - 1) += entry.value;
  const Matrix y = x * b + e;

  const auto rows = numbered(spec.n);
  return Dataset{DataMatrix(x, rows, prefixed("X", spec.p)),
                 DataMatrix(y, rows, prefixed("Y", spec.q))};
}

SimulationSpec preset(const std::string& name, std::uint64_t seed) {
  SimulationSpec spec;
  spec.n = 100;
  spec.p = 130;
  spec.q = 25;
  spec.seed = seed;
  if (name == "dataset1") {
    return spec;  // independent X and Y, no structure anywhere
  }
  if (name == "dataset2") {
    spec.x_blocks = {{25, 35, 0.9}};
    spec.coefficients = {{30, 1, 1.0}, {70, 10, 1.0}};
    return spec;
  }
  if (name == "dataset3") {
    spec.e_blocks = {{1, 15, 0.9}};
    spec.coefficients = {{30, 1, 1.0}, {70, 10, 1.0}};
    return spec;
  }
  throw std::invalid_argument("unknown preset '" + name +
                              "' (expected dataset1, dataset2 or dataset3)");
}

LinearModelSpec population_model(const SimulationSpec& spec) {
  LinearModelSpec model;
  model.p = spec.p;
  model.q = spec.q;
  model.sigma_x = build_block_covariance(spec.p, spec.x_blocks);
  model.sigma_e = build_block_covariance(spec.q, spec.e_blocks);
  model.coefficients = spec.coefficients;
  return model;
}

}  // namespace rvc
