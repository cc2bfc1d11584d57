#pragma once

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mopt/linalg.hpp"

namespace mopt::problems {

using linalg::Matrix;
using linalg::Vector;

/// Raised by evaluators outside their domain (Deb requires x₁ > 0) and for
/// trial points whose objective values overflow. Line searches treat it as a
/// rejected trial, not a failure.
class infeasible_point : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EvalCounters {
    long f_calls = 0;
    long jac_calls = 0;
    void reset() { *this = EvalCounters{}; }
};

/// A named multiobjective instance. `lower`/`upper` bound the start-sampling
/// box only; iterates are unconstrained.
struct ProblemDef {
    std::string name;
    int n = 0;
    int m = 0;
    Vector lower;
    Vector upper;
    std::function<Vector(const Vector&)> objectives;             // F(x) ∈ ℝ^m
    std::function<Matrix(const Vector&)> gradients;              // JF(x), row i = ∇F_i(x)ᵀ
    std::function<std::vector<Matrix>(const Vector&)> hessians;  // [∇²F_1(x), …, ∇²F_m(x)]
};

using Rng = std::mt19937_64;

/// Registry lookup. Throws std::invalid_argument on unknown names.
ProblemDef get_problem(const std::string& name);

/// The 17 benchmark problems (Deb, JOS1a–h, PNR, WIT0–6).
const std::vector<std::string>& corpus_names();

/// The two worked examples (EX41, EX51).
const std::vector<std::string>& example_names();

/// JOS1 with arbitrary dimension and sampling half-width.
ProblemDef make_jos1(int n, double box_halfwidth);

Vector evaluate(const ProblemDef& p, const Vector& x, EvalCounters& counters);
Matrix jacobian(const ProblemDef& p, const Vector& x, EvalCounters& counters);
std::vector<Matrix> hessians(const ProblemDef& p, const Vector& x);

/// Max relative error between analytic Jacobian entries and central finite
/// differences with step h. Does not touch caller counters.
double fd_check(const ProblemDef& p, const Vector& x, double h);

/// Uniform draw strictly inside the sampling box; deterministic per seed.
Vector sample_start(Rng& rng, const ProblemDef& p);

}  // namespace mopt::problems
