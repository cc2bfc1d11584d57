#pragma once

#include <vector>

#include "mopt/linalg.hpp"

namespace mopt::dual {

using linalg::InverseMetric;
using linalg::Matrix;
using linalg::SymMatrix;
using linalg::Vector;

/// Absolute Frank-Wolfe gap tolerance. The dual lives in m dimensions
/// (m ≤ 6 on the benchmark corpus), so a tight gap is cheap and keeps the
/// outer criticality values trustworthy near the 1e-8 stopping threshold.
inline constexpr double kDefaultGapTol = 1e-12;

/// Inner iteration budget: 10·m² + 100.
int default_max_inner(int m);

/// Weights on the unit simplex Δ_m: Σλᵢ = 1, λᵢ ≥ 0.
struct SimplexPoint {
    Vector lambda;
    static SimplexPoint uniform(int m);
};

struct FrankWolfeResult {
    Vector lambda;
    double gap = 0.0;
    int inner_iters = 0;
};

/// Full output of the direction-finding subproblem at one point.
struct DualResult {
    Vector lambda;       ///< multiplier on Δ_m
    Vector d;            ///< direction, −H Jᵀλ
    double theta = 0.0;  ///< criticality value, ≤ 0; zero exactly at critical points
    double t = 0.0;      ///< common bound on ∇F_iᵀd; equals 2θ
    double gap = 0.0;    ///< final Frank-Wolfe duality gap
    int inner_iters = 0;
};

/// G_ij = ∇F_iᵀ H ∇F_j, so the dual objective is ½ λᵀGλ.
Matrix build_gram(const Matrix& J, const InverseMetric& H);

/// Minimizes q(λ) = ½ λᵀGλ over Δ_m by Frank-Wolfe with exact quadratic
/// steps. Vertex ties break to the smallest index; λ starts uniform. Budget
/// exhaustion is reported through gap > tol, never as a failure.
/// max_inner < 0 selects default_max_inner(m).
FrankWolfeResult frank_wolfe_simplex(const Matrix& G, double tol = kDefaultGapTol,
                                     int max_inner = -1);

/// Shared-metric subproblem: λ from frank_wolfe_simplex on build_gram(J, H),
/// d = −H Jᵀλ, θ = −½ (Jᵀλ)ᵀ H (Jᵀλ), t = 2θ.
DualResult solve_subproblem(const Matrix& J, const InverseMetric& H,
                            double tol = kDefaultGapTol, int max_inner = -1);

/// Per-objective-metric dual for the baseline direction problem
/// min_d max_i ∇F_iᵀd + ½dᵀB_i d: minimizes q(λ) = ½ g_λᵀ M_λ⁻¹ g_λ with
/// M_λ = Σλ_iB_i by Frank-Wolfe with step sizes halving from 1 until q
/// decreases. Returns d = −M_λ⁻¹g_λ and θ = −q(λ).
DualResult solve_qnm_dual(const Matrix& J, const std::vector<SymMatrix>& metrics,
                          double tol = kDefaultGapTol, int max_inner = -1);

}  // namespace mopt::dual
