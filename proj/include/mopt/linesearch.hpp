#pragma once

#include "mopt/problems.hpp"

namespace mopt::linesearch {

using linalg::Vector;
using problems::EvalCounters;
using problems::ProblemDef;

struct LineSearchParams {
    double sigma = 0.1;
    double gamma = 0.5;
    /// α ≥ γ^max_backtracks ≈ 1e-18 for the defaults before declaring failure.
    int max_backtracks = 60;
};

struct LineSearchOutcome {
    double alpha = 1.0;
    int backtracks = 0;
    bool accepted = false;
    /// Trial state at the returned α, so the caller never re-evaluates F.
    Vector x_new;
    Vector f_new;  // empty when the last trial was infeasible
};

/// Componentwise backtracking rule: accept the largest α ∈ {1, γ, γ², …}
/// with F_i(x+αd) − F_i(x) ≤ σα(Jd)_i for every i. Infeasible trial points
/// count as rejections.
LineSearchOutcome armijo_vector(const ProblemDef& p, const Vector& x, const Vector& f_x,
                                const Vector& d, const Vector& jd,
                                const LineSearchParams& params, EvalCounters& counters);

/// Aggregated backtracking rule: accept the largest α ∈ {1, γ, γ², …} with
/// λ·F(x+αd) − λ·F(x) ≤ σαθ. Individual objectives may increase; the
/// λ-weighted merit decreases strictly. Requires θ < 0.
LineSearchOutcome armijo_aggregated(const ProblemDef& p, const Vector& x, const Vector& f_x,
                                    const Vector& d, const Vector& lambda, double theta,
                                    const LineSearchParams& params, EvalCounters& counters);

}  // namespace mopt::linesearch
