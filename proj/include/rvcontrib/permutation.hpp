#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rvcontrib/data_matrix.hpp"
#include "rvcontrib/rv.hpp"

namespace rvc {

/// Monte Carlo settings for permutation inference. Permutation b always draws
/// from the stream derived from (seed, b), so results do not depend on thread
/// scheduling. Permutations are sampled with replacement (duplicates allowed).
struct PermutationPlan {
  int n_perms = 5000;
  std::uint64_t seed = 0;
  double level = 0.95;
};

/// Outcome of the adaptive powered-correlation test over a power grid.
/// alpha_m is the grid power with the smallest p-value (ties broken toward
/// the smallest power); aspc_p is the permutation p-value of the min-p
/// statistic.
struct TestResult {
  std::vector<int> grid;
  std::vector<double> observed;
  std::vector<double> p_values;
  int alpha_m = 1;
  double aspc_p = 1.0;
};

struct SpcResult {
  double observed = 0.0;
  double p_value = 1.0;
};

/// Permutation test of the powered-correlation statistic at a single power.
/// Rows of xs are permuted, ys is held fixed. The p-value convention is
/// (1 + #{permutation stat >= observed}) / (1 + n_perms), so p >= 1/(B+1).
/// threads <= 0 means use all hardware threads; the result is identical for
/// every thread count.
SpcResult spc_pvalue(const StandardizedMatrix& xs, const StandardizedMatrix& ys,
                     int alpha, const PermutationPlan& plan, int threads = 0);

/// Adaptive test over a sorted grid of powers, sharing one permutation set
/// across powers. The adaptive p-value ranks each permutation's min-p against
/// the other permutations (leave-one-out), then compares with the observed
/// min-p under the usual (1 + count) / (1 + B) convention.
TestResult aspc(const StandardizedMatrix& xs, const StandardizedMatrix& ys,
                const std::vector<int>& grid, const PermutationPlan& plan,
                int threads = 0);

/// Significance threshold for a contribution plot: the empirical
/// plan.level quantile (type-7, linearly interpolated) of the maximum
/// contribution over variables, across n_perms row permutations of xs.
double contribution_threshold(const StandardizedMatrix& xs,
                              const StandardizedMatrix& ys, int alpha,
                              const PermutationPlan& plan, int threads = 0);

/// Empirical quantile with linear interpolation between order statistics
/// (R's default, type 7). level must be strictly inside (0, 1).
double empirical_quantile(std::vector<double> values, double level);

/// Inputs recorded alongside results so a run can be reproduced. The worker
/// thread count is deliberately not part of provenance: it never affects
/// results and reports must be byte-identical across thread counts.
struct Provenance {
  std::string command;
  std::string version;
  std::vector<int> grid;
  int n_perms = 0;
  double level = 0.95;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;  // (path, digest)
};

/// Full analysis output: the adaptive test, the contribution profile at
/// alpha_m with its threshold attached, and a per-response breakdown for
/// every flagged variable.
struct AnalysisReport {
  TestResult test;
  ContributionProfile profile;
  std::vector<std::string> response_names;
  std::vector<std::pair<std::string, std::vector<double>>> per_response;
  Provenance provenance;
};

/// End-to-end pipeline: residualize on confounders when given, standardize,
/// run the adaptive test, then compute contributions, threshold and flagged
/// per-response profiles at the selected power. The same plan (hence the same
/// permutation streams) drives both the test and the threshold.
AnalysisReport analyze(const DataMatrix& x, const DataMatrix& y,
                       const DataMatrix* confounders,
                       const std::vector<int>& grid,
                       const PermutationPlan& plan, int threads = 0);

}  // namespace rvc
