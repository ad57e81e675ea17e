#include "rvcontrib/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>

#include "internal.hpp"
#include "rvcontrib/preprocess.hpp"
#include "rvcontrib/rng.hpp"
#include "rvcontrib/version.hpp"

namespace rvc {

namespace {

void validate_plan(const PermutationPlan& plan) {
  if (plan.n_perms < 1)
    throw std::invalid_argument("n_perms must be at least 1");
  if (!(plan.level > 0.0) || !(plan.level < 1.0))
    throw std::invalid_argument("level must be strictly inside (0, 1)");
}

void validate_grid(const std::vector<int>& grid) {
  if (grid.empty()) throw EmptyGridError();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1)
      throw std::invalid_argument("grid powers must be positive integers");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw std::invalid_argument("grid must be strictly ascending");
  }
}

// Run fn(b) for every b in [0, n_tasks), split into contiguous chunks across
// worker threads. Each index is visited exactly once, so any per-b slot
// writes land identically no matter how many threads run.
void parallel_tasks(int n_tasks, int threads,
                    const std::function<void(int)>& fn) {
  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min(n_threads, n_tasks);
  if (n_threads <= 1) {
    for (int b = 0; b < n_tasks; ++b) fn(b);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  const int chunk = (n_tasks + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(n_tasks, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int b = lo; b < hi; ++b) fn(b);
    });
  }
  for (auto& th : pool) th.join();
}

// For each permutation b: permute the rows of xs by the stream derived from
// (seed, b), form the correlation matrix against ys, and hand it to sink.
// sink(b, r) must only write b-indexed slots.
void for_each_permuted_correlation(
    const Matrix& xs, const Matrix& ys, const PermutationPlan& plan,
    int threads, const std::function<void(int, const Matrix&)>& sink) {
  const Index n = xs.rows();
  const double n1 = static_cast<double>(n - 1);
  parallel_tasks(plan.n_perms, threads, [&](int b) {
    thread_local Matrix permuted;
    thread_local Matrix r;
    Rng rng(stream_seed(plan.seed, static_cast<std::uint64_t>(b)));
    const auto perm = random_permutation(n, rng);
    permuted.resize(n, xs.cols());
    for (Index j = 0; j < xs.cols(); ++j)
      for (Index i = 0; i < n; ++i) permuted(i, j) = xs(perm[static_cast<std::size_t>(i)], j);
    r.noalias() = permuted.transpose() * ys;
    r /= n1;
    sink(b, r);
  });
}

double smoothed_pvalue(int count_geq, int n_perms) {
  return static_cast<double>(1 + count_geq) / static_cast<double>(1 + n_perms);
}

// #{v in sorted : v >= value}
int count_geq(const std::vector<double>& sorted, double value) {
  return static_cast<int>(sorted.end() -
                          std::lower_bound(sorted.begin(), sorted.end(), value));
}

void check_min_rows(const StandardizedMatrix& xs) {
  if (xs.rows() < 3)
    throw std::invalid_argument("permutation tests need at least 3 rows");
}

}  // namespace

double empirical_quantile(std::vector<double> values, double level) {
  if (values.empty())
    throw std::invalid_argument("quantile of an empty sample");
  if (!(level > 0.0) || !(level < 1.0))
    throw std::invalid_argument("quantile level must be inside (0, 1)");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * level;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

SpcResult spc_pvalue(const StandardizedMatrix& xs, const StandardizedMatrix& ys,
                     int alpha, const PermutationPlan& plan, int threads) {
  detail::require_positive_alpha(alpha);
  validate_plan(plan);
  check_min_rows(xs);
  if (xs.row_ids() != ys.row_ids())
    throw RowMismatchError("the two matrices must share rows in order");

  const Matrix robs =
      detail::correlation_from_standardized(xs.values(), ys.values());
  SpcResult result;
  result.observed = detail::powered_sum(robs, alpha);

  std::vector<double> stats(static_cast<std::size_t>(plan.n_perms));
  for_each_permuted_correlation(
      xs.values(), ys.values(), plan, threads,
      [&](int b, const Matrix& r) {
        stats[static_cast<std::size_t>(b)] = detail::powered_sum(r, alpha);
      });

  int count = 0;
  for (double s : stats)
    if (s >= result.observed) ++count;
  result.p_value = smoothed_pvalue(count, plan.n_perms);
  return result;
}

TestResult aspc(const StandardizedMatrix& xs, const StandardizedMatrix& ys,
                const std::vector<int>& grid, const PermutationPlan& plan,
                int threads) {
  validate_grid(grid);
  validate_plan(plan);
  check_min_rows(xs);
  if (xs.row_ids() != ys.row_ids())
    throw RowMismatchError("the two matrices must share rows in order");

  const std::size_t n_alpha = grid.size();
  const std::size_t n_perms = static_cast<std::size_t>(plan.n_perms);

  TestResult result;
  result.grid = grid;

  const Matrix robs =
      detail::correlation_from_standardized(xs.values(), ys.values());
  result.observed.resize(n_alpha);
  for (std::size_t a = 0; a < n_alpha; ++a)
    result.observed[a] = detail::powered_sum(robs, grid[a]);

  // one shared permutation set for all powers; stats[b * n_alpha + a]
  std::vector<double> stats(n_perms * n_alpha);
  for_each_permuted_correlation(
      xs.values(), ys.values(), plan, threads,
      [&](int b, const Matrix& r) {
        for (std::size_t a = 0; a < n_alpha; ++a)
          stats[static_cast<std::size_t>(b) * n_alpha + a] =
              detail::powered_sum(r, grid[a]);
      });

  std::vector<std::vector<double>> sorted(n_alpha);
  for (std::size_t a = 0; a < n_alpha; ++a) {
    sorted[a].resize(n_perms);
    for (std::size_t b = 0; b < n_perms; ++b)
      sorted[a][b] = stats[b * n_alpha + a];
    std::sort(sorted[a].begin(), sorted[a].end());
  }

  result.p_values.resize(n_alpha);
  for (std::size_t a = 0; a < n_alpha; ++a)
    result.p_values[a] =
        smoothed_pvalue(count_geq(sorted[a], result.observed[a]), plan.n_perms);

  std::size_t best = 0;
  for (std::size_t a = 1; a < n_alpha; ++a)
    if (result.p_values[a] < result.p_values[best]) best = a;
  result.alpha_m = grid[best];
  const double min_p_observed = result.p_values[best];

  // adaptive p-value: each permutation's min-p is formed by ranking its
  // statistics against the other permutations (leave-one-out; the self-count
  // cancels the +1 smoothing), then compared with the observed min-p.
  int count = 0;
  for (std::size_t b = 0; b < n_perms; ++b) {
    double min_p = 2.0;
    for (std::size_t a = 0; a < n_alpha; ++a) {
      const double p_b =
          static_cast<double>(count_geq(sorted[a], stats[b * n_alpha + a])) /
          static_cast<double>(n_perms);
      min_p = std::min(min_p, p_b);
    }
    if (min_p <= min_p_observed) ++count;
  }
  result.aspc_p = smoothed_pvalue(count, plan.n_perms);
  return result;
}

double contribution_threshold(const StandardizedMatrix& xs,
                              const StandardizedMatrix& ys, int alpha,
                              const PermutationPlan& plan, int threads) {
  detail::require_positive_alpha(alpha);
  validate_plan(plan);
  check_min_rows(xs);
  if (xs.row_ids() != ys.row_ids())
    throw RowMismatchError("the two matrices must share rows in order");

  std::vector<double> maxima(static_cast<std::size_t>(plan.n_perms));
  for_each_permuted_correlation(
      xs.values(), ys.values(), plan, threads,
      [&](int b, const Matrix& r) {
        thread_local std::vector<double> sums;
        detail::row_powered_sums(r, alpha, sums);
        maxima[static_cast<std::size_t>(b)] =
            *std::max_element(sums.begin(), sums.end());
      });
  return empirical_quantile(std::move(maxima), plan.level);
}

AnalysisReport analyze(const DataMatrix& x, const DataMatrix& y,
                       const DataMatrix* confounders,
                       const std::vector<int>& grid,
                       const PermutationPlan& plan, int threads) {
  std::optional<DataMatrix> x_adj, y_adj;
  if (confounders != nullptr) {
    x_adj = residualize(x, *confounders);
    y_adj = residualize(y, *confounders);
  }
  const StandardizedMatrix xs = standardize_columns(x_adj ? *x_adj : x);
  const StandardizedMatrix ys = standardize_columns(y_adj ? *y_adj : y);

  AnalysisReport report;
  report.test = aspc(xs, ys, grid, plan, threads);
  report.profile = contributions(xs, ys, report.test.alpha_m);
  report.profile.set_threshold(
      contribution_threshold(xs, ys, report.test.alpha_m, plan, threads));
  report.response_names = ys.col_names();
  for (Index k : report.profile.flagged) {
    report.per_response.emplace_back(
        report.profile.variable_names[static_cast<std::size_t>(k)],
        per_response_profile(xs, ys, k, report.test.alpha_m));
  }
  report.provenance.command = "analyze";
  report.provenance.version = kVersion;
  report.provenance.grid = grid;
  report.provenance.n_perms = plan.n_perms;
  report.provenance.level = plan.level;
  report.provenance.seed = plan.seed;
  return report;
}

}  // namespace rvc
