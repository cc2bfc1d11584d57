#include "mopt/solver.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "mopt/io.hpp"

namespace mopt::solver {

std::string to_string(Metric m) {
    switch (m) {
        case Metric::identity: return "identity";
        case Metric::bfgs_shared: return "bfgs";
        case Metric::bfgs_per_objective: return "qn-per-objective";
    }
    return "?";
}

std::string to_string(LineSearchRule r) {
    return r == LineSearchRule::vector ? "vector" : "aggregated";
}

std::string to_string(Status s) {
    switch (s) {
        case Status::critical: return "critical";
        case Status::max_iter: return "max_iter";
        case Status::linesearch_failure: return "linesearch_failure";
    }
    return "?";
}

namespace {

SymMatrix weighted_sum(const std::vector<SymMatrix>& mats, const Vector& w) {
    Matrix acc = w[0] * mats[0].mat();
    for (int i = 1; i < w.size(); ++i) acc += w[i] * mats[i].mat();
    return SymMatrix(std::move(acc));
}

}  // namespace

SolveResult run(const ProblemDef& p, const Vector& x0, const SolverOptions& opts) {
    if (x0.size() != p.n) throw std::invalid_argument("run: x0 dimension mismatch");
    if (opts.eps < 0.0 || opts.max_iter < 1) throw std::invalid_argument("run: bad options");

    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    EvalCounters& counters = res.counters;

    const bool per_objective = opts.metric == Metric::bfgs_per_objective;
    InverseMetric H = InverseMetric::identity(p.n);
    std::vector<SymMatrix> Bs;
    if (per_objective) Bs.assign(p.m, SymMatrix::identity(p.n));
    std::optional<SymMatrix> B_mirror;  // primal twin of H for diagnostics
    if (opts.diagnostics && opts.metric == Metric::bfgs_shared)
        B_mirror = SymMatrix::identity(p.n);

    Vector x = x0;
    Vector f = problems::evaluate(p, x, counters);  // infeasible x0 propagates
    Matrix jac = problems::jacobian(p, x, counters);

    dual::DualResult dr;
    for (int k = 0;; ++k) {
        dr = per_objective
                 ? dual::solve_qnm_dual(jac, Bs, opts.dual_tol, opts.dual_max_inner)
                 : dual::solve_subproblem(jac, H, opts.dual_tol, opts.dual_max_inner);

        if (std::abs(dr.theta) <= opts.eps) {
            res.status = Status::critical;
            res.iters = k;
            break;
        }
        if (k >= opts.max_iter) {
            res.status = Status::max_iter;
            res.iters = k;
            break;
        }

        linesearch::LineSearchOutcome ls;
        if (opts.linesearch == LineSearchRule::vector) {
            const Vector jd = jac * dr.d;
            ls = linesearch::armijo_vector(p, x, f, dr.d, jd, opts.ls, counters);
        } else {
            ls = linesearch::armijo_aggregated(p, x, f, dr.d, dr.lambda, dr.theta, opts.ls,
                                               counters);
        }
        if (!ls.accepted) {
            res.status = Status::linesearch_failure;
            res.iters = k;
            break;
        }

        IterateRecord rec;
        rec.k = k;
        rec.x = x;
        rec.lambda = dr.lambda;
        rec.d = dr.d;
        rec.theta = dr.theta;
        rec.norm_d = dr.d.norm();
        rec.alpha = ls.alpha;
        rec.backtracks = ls.backtracks;
        if (opts.metric == Metric::identity) {
            rec.eig_lo = rec.eig_hi = 1.0;
            if (opts.diagnostics) rec.primal_metric = Matrix::Identity(p.n, p.n);
        } else if (opts.diagnostics) {
            // Snapshot the metric that produced d_k, before the update.
            const SymMatrix B_now =
                per_objective ? weighted_sum(Bs, dr.lambda) : *B_mirror;
            auto [lo, hi] = linalg::eig_bounds_estimate(B_now);
            rec.eig_lo = lo;
            rec.eig_hi = hi;
            rec.primal_metric = B_now.mat();
        }

        Matrix jac_next = problems::jacobian(p, ls.x_new, counters);
        const Vector s = ls.x_new - x;
        bool any_skip = false;
        if (opts.metric == Metric::bfgs_shared) {
            const Vector y = jac_next.transpose() * dr.lambda - jac.transpose() * dr.lambda;
            if (linalg::curvature_holds(s, y, opts.curvature_tol)) {
                H = linalg::bfgs_update_inverse(H, s, y, opts.curvature_tol);
                if (B_mirror)
                    *B_mirror = linalg::bfgs_update_primal(*B_mirror, s, y, opts.curvature_tol);
            } else {
                any_skip = true;
                ++res.curvature_skips;
            }
        } else if (per_objective) {
            for (int i = 0; i < p.m; ++i) {
                const Vector yi = (jac_next.row(i) - jac.row(i)).transpose();
                if (linalg::curvature_holds(s, yi, opts.curvature_tol)) {
                    Bs[i] = linalg::bfgs_update_primal(Bs[i], s, yi, opts.curvature_tol);
                } else {
                    any_skip = true;
                    ++res.curvature_skips;
                }
            }
        }
        rec.curvature_skipped = any_skip;
        res.trace.push_back(std::move(rec));

        x = ls.x_new;
        f = ls.f_new;
        jac = std::move(jac_next);
    }

    res.x_final = x;
    res.lambda_final = dr.lambda;
    res.theta_final = dr.theta;
    res.norm_d_final = dr.d.norm();

    if (opts.metric == Metric::identity) {
        res.eig_lo_final = res.eig_hi_final = 1.0;
    } else if (opts.diagnostics) {
        const SymMatrix B_final = per_objective
                                      ? weighted_sum(Bs, dr.lambda)
                                      : (B_mirror ? *B_mirror : SymMatrix::identity(p.n));
        auto [lo, hi] = linalg::eig_bounds_estimate(B_final);
        res.eig_lo_final = lo;
        res.eig_hi_final = hi;
    }
    if (opts.keep_final_metric) {
        if (per_objective)
            res.final_metrics = std::move(Bs);
        else
            res.final_metric = std::move(H);
    }

    res.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<double> superlinear_ratios(const std::vector<IterateRecord>& trace,
                                       const Vector& x_ref) {
    std::vector<double> out;
    if (trace.empty()) return out;
    std::vector<Vector> xs;
    xs.reserve(trace.size() + 1);
    for (const auto& r : trace) xs.push_back(r.x);
    xs.push_back(trace.back().x + trace.back().alpha * trace.back().d);
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double den = (xs[k] - x_ref).norm();
        if (den > 1e-14) out.push_back((xs[k + 1] - x_ref).norm() / den);
    }
    return out;
}

std::vector<double> hessian_residual(const ProblemDef& p,
                                     const std::vector<IterateRecord>& trace) {
    std::vector<double> out;
    for (const auto& r : trace) {
        if (!r.primal_metric || !(r.norm_d > 0.0)) continue;
        const auto hs = problems::hessians(p, r.x);
        Matrix agg = r.lambda[0] * hs[0];
        for (int i = 1; i < p.m; ++i) agg += r.lambda[i] * hs[i];
        out.push_back(((*r.primal_metric - agg) * r.d).norm() / r.norm_d);
    }
    return out;
}

AssumptionSummary assumption_diagnostics(const std::vector<IterateRecord>& trace) {
    if (trace.empty()) throw std::invalid_argument("assumption_diagnostics: empty trace");
    AssumptionSummary s;
    for (const auto& r : trace) {
        if (!std::isnan(r.eig_lo))
            s.eig_lo_min = std::isnan(s.eig_lo_min) ? r.eig_lo : std::min(s.eig_lo_min, r.eig_lo);
        if (!std::isnan(r.eig_hi))
            s.eig_hi_max = std::isnan(s.eig_hi_max) ? r.eig_hi : std::max(s.eig_hi_max, r.eig_hi);
        if (r.curvature_skipped) ++s.curvature_skips;
    }
    const std::size_t tail = std::min<std::size_t>(5, trace.size());
    const std::size_t begin = trace.size() - tail;
    s.tail_len = static_cast<int>(tail);
    for (std::size_t k = begin; k < trace.size(); ++k) {
        s.norm_d_tail_max = std::max(s.norm_d_tail_max, trace[k].norm_d);
        if (k + 1 < trace.size())
            s.lambda_step_tail_max = std::max(
                s.lambda_step_tail_max, (trace[k + 1].lambda - trace[k].lambda).norm());
    }
    return s;
}

void write_trace_csv(const SolveResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open trace file: " + path);
    const auto m = result.lambda_final.size();
    out << "k,theta,norm_d,alpha,backtracks,skipped";
    for (Eigen::Index i = 0; i < m; ++i) out << ",lambda_" << i;
    out << "\n";
    for (const auto& r : result.trace) {
        out << r.k << ',' << io::fmt(r.theta) << ',' << io::fmt(r.norm_d) << ','
            << io::fmt(r.alpha) << ',' << r.backtracks << ',' << (r.curvature_skipped ? 1 : 0);
        for (Eigen::Index i = 0; i < m; ++i) out << ',' << io::fmt(r.lambda[i]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("failed writing trace file: " + path);
}

}  // namespace mopt::solver
