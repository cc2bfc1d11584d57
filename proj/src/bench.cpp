#include "mopt/bench.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "mopt/io.hpp"

namespace mopt::bench {

const std::vector<std::string>& suite_table2() { return problems::corpus_names(); }
const std::vector<std::string>& suite_examples() { return problems::example_names(); }

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MOPT_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<solver::SolveResult> run_starts(const ProblemDef& p, int runs, std::uint64_t seed,
                                            const solver::SolverOptions& opts, int workers,
                                            const std::optional<Vector>& x0_override) {
    if (runs < 1) throw std::invalid_argument("run_starts: runs must be ≥ 1");
    std::vector<solver::SolveResult> results(runs);
    const int nworkers = std::min(resolve_workers(workers), runs);

    std::atomic<int> next{0};
    auto work = [&] {
        for (;;) {
            const int j = next.fetch_add(1);
            if (j >= runs) return;
            problems::Rng rng(seed + static_cast<std::uint64_t>(j));
            const Vector x0 = x0_override ? *x0_override : problems::sample_start(rng, p);
            results[j] = solver::run(p, x0, opts);
        }
    };
    if (nworkers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (int w = 0; w < nworkers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return results;
}

namespace {

SuiteReport run_suite_impl(const BenchConfig& config, const std::vector<ProblemDef>& defs) {
    SuiteReport report;
    report.config = config;
    for (const auto& p : defs) {
        const auto results =
            run_starts(p, config.runs, config.seed, config.opts, config.workers,
                       config.x0_override);

        RunStats st;
        st.problem = p.name;
        long completed = 0;
        for (int j = 0; j < config.runs; ++j) {
            const auto& r = results[j];
            RunRow row;
            row.problem = p.name;
            row.run = j;
            row.seed = config.seed + static_cast<std::uint64_t>(j);
            row.status = r.status;
            row.iters = r.iters;
            row.fevals = r.counters.f_calls;
            row.jac_evals = r.counters.jac_calls;
            row.time_s = r.wall_time;
            row.theta_final = r.theta_final;
            report.raw.push_back(std::move(row));

            if (r.status == solver::Status::critical) {
                ++completed;
                st.mean_iter += r.iters;
                st.mean_feval += static_cast<double>(r.counters.f_calls);
                st.mean_jac += static_cast<double>(r.counters.jac_calls);
                st.mean_time += r.wall_time;
            } else {
                ++st.failures;
            }
        }
        if (completed > 0) {
            st.mean_iter /= static_cast<double>(completed);
            st.mean_feval /= static_cast<double>(completed);
            st.mean_jac /= static_cast<double>(completed);
            st.mean_time /= static_cast<double>(completed);
        }
        st.critical_fraction = static_cast<double>(completed) / config.runs;
        report.stats.push_back(std::move(st));
    }
    return report;
}

}  // namespace

SuiteReport run_suite(const BenchConfig& config) {
    if (config.problems.empty()) throw std::invalid_argument("run_suite: no problems given");
    std::vector<ProblemDef> defs;
    defs.reserve(config.problems.size());
    for (const auto& name : config.problems) defs.push_back(problems::get_problem(name));
    return run_suite_impl(config, defs);
}

SuiteReport run_suite(const BenchConfig& config, const std::vector<ProblemDef>& defs) {
    if (defs.empty()) throw std::invalid_argument("run_suite: no problems given");
    return run_suite_impl(config, defs);
}

void export_report(const SuiteReport& report, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());

    const auto summary_path = (fs::path(dir) / "summary.csv").string();
    std::ofstream summary(summary_path);
    if (!summary) throw std::runtime_error("cannot open " + summary_path);
    summary << "problem,mean_iter,mean_feval,mean_time_s,critical_fraction,failures\n";
    for (const auto& st : report.stats) {
        summary << st.problem << ',' << io::fmt(st.mean_iter) << ',' << io::fmt(st.mean_feval)
                << ',' << io::fmt(st.mean_time) << ',' << io::fmt(st.critical_fraction) << ','
                << st.failures << "\n";
    }
    if (!summary) throw std::runtime_error("failed writing " + summary_path);

    const auto raw_path = (fs::path(dir) / "raw.csv").string();
    std::ofstream raw(raw_path);
    if (!raw) throw std::runtime_error("cannot open " + raw_path);
    raw << "problem,run,seed,status,iters,fevals,time_s,theta_final\n";
    for (const auto& row : report.raw) {
        raw << row.problem << ',' << row.run << ',' << row.seed << ','
            << solver::to_string(row.status) << ',' << row.iters << ',' << row.fevals << ','
            << io::fmt(row.time_s) << ',' << io::fmt(row.theta_final) << "\n";
    }
    if (!raw) throw std::runtime_error("failed writing " + raw_path);
}

void export_cloud(const std::vector<solver::SolveResult>& results, const ProblemDef& p,
                  const std::string& path) {
    for (const auto& r : results)
        if (r.x_final.size() != p.n)
            throw std::invalid_argument("export_cloud: result dimension mismatch");

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (int j = 0; j < p.n; ++j) out << (j ? "," : "") << "x_" << j;
    for (int i = 0; i < p.m; ++i) out << ",F_" << i;
    out << "\n";
    problems::EvalCounters scratch;
    for (const auto& r : results) {
        const Vector f = problems::evaluate(p, r.x_final, scratch);
        for (int j = 0; j < p.n; ++j) out << (j ? "," : "") << io::fmt(r.x_final[j]);
        for (int i = 0; i < p.m; ++i) out << ',' << io::fmt(f[i]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace mopt::bench
