#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mopt/solver.hpp"

namespace mopt::bench {

using linalg::Vector;
using problems::ProblemDef;

struct BenchConfig {
    std::vector<std::string> problems;
    int runs = 200;
    std::uint64_t seed = 1;
    solver::SolverOptions opts{};
    /// Fixed start for every run instead of sampled ones (worked examples).
    std::optional<Vector> x0_override;
    /// 0 → MOPT_WORKERS env var, else hardware concurrency.
    int workers = 0;
};

struct RunRow {
    std::string problem;
    int run = 0;
    std::uint64_t seed = 0;
    solver::Status status = solver::Status::max_iter;
    int iters = 0;
    long fevals = 0;
    long jac_evals = 0;
    double time_s = 0.0;
    double theta_final = 0.0;
};

/// Per-problem aggregates; means are over critical runs only, failures
/// (max_iter or line-search exhaustion) are counted separately.
struct RunStats {
    std::string problem;
    double mean_iter = 0.0;
    double mean_feval = 0.0;
    double mean_jac = 0.0;
    double mean_time = 0.0;
    double critical_fraction = 0.0;
    int failures = 0;
};

struct SuiteReport {
    BenchConfig config;
    std::vector<RunStats> stats;  // one per problem, config order
    std::vector<RunRow> raw;      // problems × runs, ordered by (problem, run)
};

/// Seeded repeated runs of one problem; run j draws its start from
/// generator seed `seed + j`, independent of execution order.
std::vector<solver::SolveResult> run_starts(const ProblemDef& p, int runs, std::uint64_t seed,
                                            const solver::SolverOptions& opts, int workers = 0,
                                            const std::optional<Vector>& x0_override = {});

SuiteReport run_suite(const BenchConfig& config);

/// As above with pre-resolved definitions (synthetic problems in tests).
SuiteReport run_suite(const BenchConfig& config, const std::vector<ProblemDef>& defs);

/// Writes <dir>/summary.csv and <dir>/raw.csv.
void export_report(const SuiteReport& report, const std::string& dir);

/// Terminal iterates with their objective values:
/// x_0..x_{n-1},F_0..F_{m-1}, one row per run.
void export_cloud(const std::vector<solver::SolveResult>& results, const ProblemDef& p,
                  const std::string& path);

/// The 17 benchmark problems.
const std::vector<std::string>& suite_table2();
/// The two worked examples.
const std::vector<std::string>& suite_examples();

int resolve_workers(int requested);

}  // namespace mopt::bench
