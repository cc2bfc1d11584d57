#include "mopt/linesearch.hpp"

#include <stdexcept>

namespace mopt::linesearch {

namespace {

void validate(const ProblemDef& p, const Vector& x, const Vector& f_x, const Vector& d,
              const LineSearchParams& params) {
    if (x.size() != p.n || d.size() != p.n || f_x.size() != p.m)
        throw std::invalid_argument("line search: dimension mismatch");
    if (params.sigma <= 0.0 || params.sigma >= 1.0 || params.gamma <= 0.0 ||
        params.gamma >= 1.0 || params.max_backtracks < 1)
        throw std::invalid_argument("line search: parameters out of range");
}

// Walks α through {1, γ, γ², …}; `accept` judges one feasible trial.
template <typename Accept>
LineSearchOutcome backtrack(const ProblemDef& p, const Vector& x, const Vector& d,
                            const LineSearchParams& params, EvalCounters& counters,
                            Accept&& accept) {
    LineSearchOutcome out;
    double alpha = 1.0;
    for (int b = 0; b <= params.max_backtracks; ++b) {
        out.alpha = alpha;
        out.backtracks = b;
        out.x_new = x + alpha * d;
        try {
            out.f_new = problems::evaluate(p, out.x_new, counters);
            if (accept(out.f_new, alpha)) {
                out.accepted = true;
                return out;
            }
        } catch (const problems::infeasible_point&) {
            out.f_new.resize(0);  // rejected trial, keep backtracking
        }
        alpha *= params.gamma;
    }
    out.accepted = false;  // exhausted: out holds the γ^max_backtracks trial
    return out;
}

}  // namespace

LineSearchOutcome armijo_vector(const ProblemDef& p, const Vector& x, const Vector& f_x,
                                const Vector& d, const Vector& jd,
                                const LineSearchParams& params, EvalCounters& counters) {
    validate(p, x, f_x, d, params);
    if (jd.size() != p.m) throw std::invalid_argument("armijo_vector: Jd must have one entry per objective");
    return backtrack(p, x, d, params, counters, [&](const Vector& f_trial, double alpha) {
        return ((f_trial - f_x).array() <= params.sigma * alpha * jd.array()).all();
    });
}

LineSearchOutcome armijo_aggregated(const ProblemDef& p, const Vector& x, const Vector& f_x,
                                    const Vector& d, const Vector& lambda, double theta,
                                    const LineSearchParams& params, EvalCounters& counters) {
    validate(p, x, f_x, d, params);
    if (lambda.size() != p.m)
        throw std::invalid_argument("armijo_aggregated: lambda must have one entry per objective");
    if (!(theta < 0.0)) throw std::invalid_argument("armijo_aggregated: requires θ < 0");
    const double merit_x = lambda.dot(f_x);
    return backtrack(p, x, d, params, counters, [&](const Vector& f_trial, double alpha) {
        return lambda.dot(f_trial) - merit_x <= params.sigma * alpha * theta;
    });
}

}  // namespace mopt::linesearch
