#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mopt/dual.hpp"
#include "mopt/linesearch.hpp"
#include "mopt/problems.hpp"

namespace mopt::solver {

using linalg::InverseMetric;
using linalg::Matrix;
using linalg::SymMatrix;
using linalg::Vector;
using problems::EvalCounters;
using problems::ProblemDef;

enum class Metric { identity, bfgs_shared, bfgs_per_objective };
enum class LineSearchRule { vector, aggregated };
enum class Status { critical, max_iter, linesearch_failure };

std::string to_string(Metric m);
std::string to_string(LineSearchRule r);
std::string to_string(Status s);

struct SolverOptions {
    Metric metric = Metric::bfgs_shared;
    LineSearchRule linesearch = LineSearchRule::aggregated;
    double eps = 1e-8;  ///< stopping tolerance on |θ_k|
    int max_iter = 500;
    linesearch::LineSearchParams ls{};
    double dual_tol = dual::kDefaultGapTol;
    int dual_max_inner = -1;  ///< -1 → 10m² + 100
    double curvature_tol = linalg::kDefaultCurvatureTol;
    /// Mirror the primal metric and record per-iteration spectrum bounds;
    /// needed by hessian_residual and assumption_diagnostics.
    bool diagnostics = false;
    /// Keep the final metric in the result (re-solve certificates).
    bool keep_final_metric = false;
};

/// One completed outer iteration: the state the subproblem saw plus the
/// accepted step.
struct IterateRecord {
    int k = 0;
    Vector x;  ///< iterate before the step
    Vector lambda;
    Vector d;
    double theta = 0.0;
    double norm_d = 0.0;
    double alpha = 0.0;
    int backtracks = 0;
    bool curvature_skipped = false;
    /// Spectrum estimates of the metric B_k; NaN unless diagnostics ran.
    double eig_lo = std::numeric_limits<double>::quiet_NaN();
    double eig_hi = std::numeric_limits<double>::quiet_NaN();
    /// Primal metric snapshot (diagnostics only).
    std::optional<Matrix> primal_metric;
};

struct SolveResult {
    Status status = Status::max_iter;
    Vector x_final;
    Vector lambda_final;
    double theta_final = 0.0;
    double norm_d_final = 0.0;
    int iters = 0;  ///< completed steps; trace.size() == iters
    EvalCounters counters;
    std::vector<IterateRecord> trace;
    double wall_time = 0.0;  ///< seconds
    long curvature_skips = 0;
    /// Spectrum of the final metric B; NaN unless diagnostics ran (identity
    /// metric reports exactly (1, 1)).
    double eig_lo_final = std::numeric_limits<double>::quiet_NaN();
    double eig_hi_final = std::numeric_limits<double>::quiet_NaN();
    std::optional<InverseMetric> final_metric;             ///< H, shared metrics
    std::optional<std::vector<SymMatrix>> final_metrics;   ///< B_i, per-objective
};

/// Variable metric outer loop: solve the direction subproblem at x_k, stop
/// when |θ_k| ≤ eps, otherwise line search and update the metric with
/// s_k = x_{k+1}−x_k and y_k = Σλᵢᵏ(∇F_i(x_{k+1})−∇F_i(x_k)).
SolveResult run(const ProblemDef& p, const Vector& x0, const SolverOptions& opts);

/// r_k = ‖x_{k+1}−x_ref‖ / ‖x_k−x_ref‖ over the iterate sequence of a trace,
/// skipping terms whose denominator is ≤ 1e-14.
std::vector<double> superlinear_ratios(const std::vector<IterateRecord>& trace,
                                       const Vector& x_ref);

/// ρ_k = ‖(B_k − Σλᵢᵏ∇²F_i(x_k)) d_k‖ / ‖d_k‖ per iteration with d_k ≠ 0.
/// Requires a diagnostics-mode trace (primal metric snapshots).
std::vector<double> hessian_residual(const ProblemDef& p,
                                     const std::vector<IterateRecord>& trace);

struct AssumptionSummary {
    double eig_lo_min = std::numeric_limits<double>::quiet_NaN();
    double eig_hi_max = std::numeric_limits<double>::quiet_NaN();
    long curvature_skips = 0;
    double lambda_step_tail_max = 0.0;  ///< max ‖λᵏ⁺¹−λᵏ‖ over the tail
    double norm_d_tail_max = 0.0;       ///< max ‖d_k‖ over the tail
    int tail_len = 0;
};

/// Empirical summary for the uniform-definiteness and multiplier/direction
/// convergence conditions; the tail is the last five records.
AssumptionSummary assumption_diagnostics(const std::vector<IterateRecord>& trace);

/// Per-iteration CSV:
/// k,theta,norm_d,alpha,backtracks,skipped,lambda_0..lambda_{m-1}
void write_trace_csv(const SolveResult& result, const std::string& path);

}  // namespace mopt::solver
