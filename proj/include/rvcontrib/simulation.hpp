#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rvcontrib/data_matrix.hpp"
#include "rvcontrib/population.hpp"
#include "rvcontrib/rng.hpp"

namespace rvc {

/// Equicorrelated sub-block of a covariance matrix: unit diagonal,
/// off_diagonal everywhere inside [lo, hi] x [lo, hi]. Bounds are 1-based
/// inclusive.
struct BlockSpec {
  Index lo = 1;
  Index hi = 1;
  double off_diagonal = 0.0;
};

/// Generative design for Y = X B + E: X ~ MVN(0, sigma_x) with sigma_x built
/// from x_blocks, E ~ MVN(0, sigma_e) from e_blocks, B sparse.
struct SimulationSpec {
  Index n = 100;
  Index p = 1;
  Index q = 1;
  std::vector<BlockSpec> x_blocks;
  std::vector<BlockSpec> e_blocks;
  std::vector<CoefficientEntry> coefficients;
  std::uint64_t seed = 0;
};

/// Unit-diagonal covariance with the given equicorrelated blocks and zeros
/// elsewhere. Blocks must not overlap, and each block of size m needs
/// off_diagonal > -1/(m-1) to stay positive definite.
Matrix build_block_covariance(Index dim, const std::vector<BlockSpec>& blocks);

/// n i.i.d. mean-zero multivariate normal rows. The standard-normal matrix is
/// filled column by column from the stream, then multiplied on the right by
/// the transposed lower Cholesky factor of sigma.
Matrix sample_mvn(Index n, const Matrix& sigma, std::uint64_t seed);

/// Same, drawing from an existing stream (used to keep one logical stream per
/// generated dataset).
Matrix sample_mvn(Index n, const Matrix& sigma, Rng& rng);

struct Dataset {
  DataMatrix x;
  DataMatrix y;
};

/// Materialize the design: draws X then E from a single stream derived from
/// spec.seed, forms Y = X B + E, and names columns X1..Xp / Y1..Yq with rows
/// "1".."n". Equal specs produce bit-identical datasets.
Dataset generate_dataset(const SimulationSpec& spec);

/// Named designs: "dataset1" (no association), "dataset2" (correlated
/// explanatory block 25..35 at 0.9), "dataset3" (correlated errors 1..15 at
/// 0.9); all with n = 100, p = 130, q = 25 and B_{30,1} = B_{70,10} = 1 where
/// applicable.
SimulationSpec preset(const std::string& name, std::uint64_t seed);

/// The linear-model parameters implied by a simulation spec, for closed-form
/// population quantities.
LinearModelSpec population_model(const SimulationSpec& spec);

}  // namespace rvc
