#include "mopt/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "mopt/bench.hpp"
#include "mopt/io.hpp"

namespace mopt::cli {

namespace {

using linalg::Vector;

struct SolverFlags {
    std::string metric = "bfgs";
    std::string linesearch = "aggregated";
    double sigma = 0.1;
    double gamma = 0.5;
    double tol = 1e-8;
    int max_iter = 500;
    int max_backtracks = 60;
    double dual_tol = dual::kDefaultGapTol;

    solver::SolverOptions to_options() const {
        solver::SolverOptions o;
        static const std::map<std::string, solver::Metric> metrics = {
            {"identity", solver::Metric::identity},
            {"bfgs", solver::Metric::bfgs_shared},
            {"qn-per-objective", solver::Metric::bfgs_per_objective},
        };
        o.metric = metrics.at(metric);
        o.linesearch = linesearch == "vector" ? solver::LineSearchRule::vector
                                              : solver::LineSearchRule::aggregated;
        o.eps = tol;
        o.max_iter = max_iter;
        o.ls.sigma = sigma;
        o.ls.gamma = gamma;
        o.ls.max_backtracks = max_backtracks;
        o.dual_tol = dual_tol;
        return o;
    }
};

void add_solver_flags(CLI::App& cmd, SolverFlags& f) {
    cmd.add_option("--metric", f.metric, "Metric: identity|bfgs|qn-per-objective")
        ->check(CLI::IsMember({"identity", "bfgs", "qn-per-objective"}));
    cmd.add_option("--linesearch", f.linesearch, "Line search rule: vector|aggregated")
        ->check(CLI::IsMember({"vector", "aggregated"}));
    cmd.add_option("--sigma", f.sigma, "Armijo slope fraction σ ∈ (0,1)");
    cmd.add_option("--gamma", f.gamma, "Backtracking factor γ ∈ (0,1)");
    cmd.add_option("--tol", f.tol, "Stopping tolerance on |θ|");
    cmd.add_option("--max-iter", f.max_iter, "Outer iteration cap");
    cmd.add_option("--max-backtracks", f.max_backtracks, "Line search trial cap");
    cmd.add_option("--dual-tol", f.dual_tol, "Frank-Wolfe gap tolerance");
}

Vector parse_x0(const std::string& text, const problems::ProblemDef& p) {
    if (text.rfind("seed:", 0) == 0) {
        problems::Rng rng(std::stoull(text.substr(5)));
        return problems::sample_start(rng, p);
    }
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        vals.push_back(std::stod(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(vals.size()) != p.n)
        throw std::invalid_argument("--x0 needs " + std::to_string(p.n) + " components for " +
                                    p.name);
    return Eigen::Map<const Vector>(vals.data(), vals.size());
}

std::string preview(const Vector& x, Eigen::Index limit = 8) {
    std::string s = "(";
    const auto k = std::min(limit, x.size());
    for (Eigen::Index i = 0; i < k; ++i) s += (i ? ", " : "") + io::fmt(x[i]);
    if (k < x.size()) s += ", …";
    return s + ")";
}

int run_solve(const std::string& problem, const std::string& x0_text, const SolverFlags& flags,
              const std::string& trace_path) {
    const auto p = problems::get_problem(problem);
    const Vector x0 = parse_x0(x0_text, p);
    const auto r = solver::run(p, x0, flags.to_options());
    std::cout << "problem      " << p.name << "\n"
              << "status       " << solver::to_string(r.status) << "\n"
              << "iterations   " << r.iters << "\n"
              << "theta_final  " << io::fmt(r.theta_final) << "\n"
              << "norm_d_final " << io::fmt(r.norm_d_final) << "\n"
              << "f_calls      " << r.counters.f_calls << "\n"
              << "jac_calls    " << r.counters.jac_calls << "\n"
              << "time_s       " << io::fmt(r.wall_time) << "\n"
              << "x_final      " << preview(r.x_final) << "\n"
              << "lambda       " << preview(r.lambda_final) << "\n";
    if (!trace_path.empty()) {
        solver::write_trace_csv(r, trace_path);
        std::cout << "trace        " << trace_path << "\n";
    }
    return 0;
}

int run_bench(std::vector<std::string> names, const std::string& suite, int runs,
              std::uint64_t seed, const SolverFlags& flags, const std::string& out_dir,
              int workers) {
    if (names.empty()) {
        if (suite == "table2")
            names = bench::suite_table2();
        else if (suite == "examples")
            names = bench::suite_examples();
        else
            throw CLI::ValidationError("--suite", "unknown suite: " + suite);
    }
    bench::BenchConfig cfg;
    cfg.problems = std::move(names);
    cfg.runs = runs;
    cfg.seed = seed;
    cfg.opts = flags.to_options();
    cfg.workers = workers;
    const auto report = bench::run_suite(cfg);
    bench::export_report(report, out_dir);
    std::cout << "problem,mean_iter,mean_feval,mean_jac,mean_time_s,critical_fraction,failures\n";
    for (const auto& st : report.stats)
        std::cout << st.problem << ',' << io::fmt(st.mean_iter) << ',' << io::fmt(st.mean_feval)
                  << ',' << io::fmt(st.mean_jac) << ',' << io::fmt(st.mean_time) << ','
                  << io::fmt(st.critical_fraction) << ',' << st.failures << "\n";
    std::cout << "wrote " << out_dir << "/summary.csv and raw.csv\n";
    return 0;
}

int run_front(const std::string& problem, int runs, std::uint64_t seed, const SolverFlags& flags,
              const std::string& out_path, int workers) {
    const auto p = problems::get_problem(problem);
    const auto results = bench::run_starts(p, runs, seed, flags.to_options(), workers);
    bench::export_cloud(results, p, out_path);
    long critical = std::count_if(results.begin(), results.end(), [](const auto& r) {
        return r.status == solver::Status::critical;
    });
    std::cout << "wrote " << out_path << " (" << results.size() << " rows, " << critical
              << " critical)\n";
    return 0;
}

int run_check(double step, int points, std::uint64_t seed) {
    std::vector<std::string> names = bench::suite_table2();
    const auto& ex = bench::suite_examples();
    names.insert(names.end(), ex.begin(), ex.end());
    for (const auto& name : names) {
        const auto p = problems::get_problem(name);
        problems::Rng rng(seed);
        double worst = 0.0;
        for (int j = 0; j < points; ++j) {
            const Vector x = problems::sample_start(rng, p);
            worst = std::max(worst, problems::fd_check(p, x, step));
        }
        std::cout << name << " max_fd_error " << io::fmt(worst) << "\n";
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Multiobjective variable metric solver toolkit"};
    app.require_subcommand(1);
    app.set_config("--config");

    // solve
    auto* solve = app.add_subcommand("solve", "Single run from one start, optional trace CSV");
    std::string solve_problem;
    std::string solve_x0 = "seed:1";
    std::string trace_path;
    SolverFlags solve_flags;
    solve->add_option("--problem", solve_problem, "Problem name")->required();
    solve->add_option("--x0", solve_x0, "Comma-separated start or seed:<int>");
    solve->add_option("--trace", trace_path, "Per-iteration CSV output path");
    add_solver_flags(*solve, solve_flags);

    // bench
    auto* benchc = app.add_subcommand("bench", "Seeded multi-start suite with CSV report");
    std::vector<std::string> bench_problems;
    std::string bench_suite = "table2";
    int bench_runs = 200;
    std::uint64_t bench_seed = 1;
    std::string bench_out = "out";
    int bench_workers = 0;
    SolverFlags bench_flags;
    benchc->add_option("--problems", bench_problems, "Explicit problem list")->delimiter(',');
    benchc->add_option("--suite", bench_suite, "Named suite: table2|examples");
    benchc->add_option("--runs", bench_runs, "Starts per problem");
    benchc->add_option("--seed", bench_seed, "Base seed; run j uses seed+j");
    benchc->add_option("--out", bench_out, "Output directory");
    benchc->add_option("--workers", bench_workers, "Concurrent runs (0 = auto)");
    add_solver_flags(*benchc, bench_flags);

    // front
    auto* front = app.add_subcommand("front", "Terminal-iterate cloud for plotting");
    std::string front_problem;
    int front_runs = 200;
    std::uint64_t front_seed = 1;
    std::string front_out = "front.csv";
    int front_workers = 0;
    SolverFlags front_flags;
    front->add_option("--problem", front_problem, "Problem name")->required();
    front->add_option("--runs", front_runs, "Starts");
    front->add_option("--seed", front_seed, "Base seed");
    front->add_option("--out", front_out, "Output CSV path");
    front->add_option("--workers", front_workers, "Concurrent runs (0 = auto)");
    add_solver_flags(*front, front_flags);

    // check
    auto* check = app.add_subcommand("check", "Finite-difference sweep over the corpus");
    double check_step = 1e-6;
    int check_points = 20;
    std::uint64_t check_seed = 7;
    check->add_option("--step", check_step, "Central difference step");
    check->add_option("--points", check_points, "Sampled points per problem");
    check->add_option("--seed", check_seed, "Sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << std::flush;
        return 1;
    }

    try {
        if (solve->parsed())
            return run_solve(solve_problem, solve_x0, solve_flags, trace_path);
        if (benchc->parsed())
            return run_bench(bench_problems, bench_suite, bench_runs, bench_seed, bench_flags,
                             bench_out, bench_workers);
        if (front->parsed())
            return run_front(front_problem, front_runs, front_seed, front_flags, front_out,
                             front_workers);
        if (check->parsed()) return run_check(check_step, check_points, check_seed);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace mopt::cli
