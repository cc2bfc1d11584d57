#include "mopt/dual.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <stdexcept>

namespace mopt::dual {

int default_max_inner(int m) { return 10 * m * m + 100; }

SimplexPoint SimplexPoint::uniform(int m) {
    if (m < 1) throw std::invalid_argument("SimplexPoint: m must be ≥ 1");
    return SimplexPoint{Vector::Constant(m, 1.0 / m)};
}

namespace {

// Smallest-index argmin keeps runs deterministic on ties.
int argmin_index(const Vector& g) {
    int best = 0;
    for (int j = 1; j < g.size(); ++j)
        if (g[j] < g[best]) best = j;
    return best;
}

// Worst vertex currently carrying weight; smallest index on ties.
int argmax_support_index(const Vector& g, const Vector& lam) {
    int best = -1;
    for (int j = 0; j < g.size(); ++j) {
        if (lam[j] <= 0.0) continue;
        if (best < 0 || g[j] > g[best]) best = j;
    }
    return best;
}

// Transfer γ ≤ λ_a of weight from vertex a to vertex s. Keeps the simplex
// sum exact to rounding and drops a cleanly at γ = λ_a.
void transfer_weight(Vector& lam, int s, int a, double gamma) {
    lam[s] += gamma;
    lam[a] = (gamma >= lam[a]) ? 0.0 : lam[a] - gamma;
}

}  // namespace

Matrix build_gram(const Matrix& J, const InverseMetric& H) {
    if (J.cols() != H.dim())
        throw std::invalid_argument("build_gram: J columns must match metric dimension");
    Matrix G = J * H.mat() * J.transpose();
    return 0.5 * (G + G.transpose());
}

FrankWolfeResult frank_wolfe_simplex(const Matrix& G, double tol, int max_inner) {
    if (G.rows() != G.cols() || G.rows() < 1)
        throw std::invalid_argument("frank_wolfe_simplex: G must be square and nonempty");
    const int m = static_cast<int>(G.rows());
    if (max_inner < 0) max_inner = default_max_inner(m);

    Vector lam = SimplexPoint::uniform(m).lambda;
    int steps = 0;
    for (;;) {
        const Vector g = G * lam;
        const int jstar = argmin_index(g);
        const double gap = lam.dot(g) - g[jstar];
        if (gap <= tol || steps >= max_inner) return {lam, gap, steps};

        // Pairwise step: move weight from the worst active vertex onto the
        // best one, with the exact minimizer of the quadratic along
        // v = e_s − e_a. Plain toward-vertex steps zig-zag sublinearly once
        // the optimum sits on a face, which leaves the 1e-12 gap out of
        // reach; the pairwise variant converges linearly on these duals.
        const int away = argmax_support_index(g, lam);
        const double slope = g[jstar] - g[away];  // < 0 while gap > 0
        const double gamma_max = lam[away];
        const double vGv = G(jstar, jstar) - 2.0 * G(jstar, away) + G(away, away);
        const double gamma =
            vGv > 0.0 ? std::clamp(-slope / vGv, 0.0, gamma_max) : gamma_max;
        transfer_weight(lam, jstar, away, gamma);
        ++steps;
    }
}

DualResult solve_subproblem(const Matrix& J, const InverseMetric& H, double tol, int max_inner) {
    const Matrix G = build_gram(J, H);
    const FrankWolfeResult fw = frank_wolfe_simplex(G, tol, max_inner);

    const Vector g_lam = J.transpose() * fw.lambda;
    const Vector d = -H.apply(g_lam);
    double quad = -d.dot(g_lam);  // g_λᵀ H g_λ
    if (quad < 0.0) quad = 0.0;   // roundoff guard at critical points

    DualResult r;
    r.lambda = fw.lambda;
    r.d = d;
    r.theta = -0.5 * quad;
    r.t = 2.0 * r.theta;
    r.gap = fw.gap;
    r.inner_iters = fw.inner_iters;
    return r;
}

DualResult solve_qnm_dual(const Matrix& J, const std::vector<SymMatrix>& metrics, double tol,
                          int max_inner) {
    const int m = static_cast<int>(J.rows());
    const auto n = J.cols();
    if (static_cast<int>(metrics.size()) != m)
        throw std::invalid_argument("solve_qnm_dual: one metric per objective required");
    for (const auto& B : metrics)
        if (B.dim() != n) throw std::invalid_argument("solve_qnm_dual: metric dimension mismatch");
    if (max_inner < 0) max_inner = default_max_inner(m);

    struct State {
        double q = 0.0;
        Vector d;
        Vector grad;  // ∂q/∂λ_j = −(∇F_jᵀd + ½dᵀB_j d)
    };
    auto eval = [&](const Vector& lam) {
        Matrix M = lam[0] * metrics[0].mat();
        for (int i = 1; i < m; ++i) M += lam[i] * metrics[i].mat();
        Eigen::LLT<Matrix> llt(M);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("solve_qnm_dual: Σλ_iB_i is not positive definite");
        const Vector g_lam = J.transpose() * lam;
        State st;
        st.d = -llt.solve(g_lam);
        st.q = std::max(0.0, -0.5 * st.d.dot(g_lam));  // ½ g_λᵀ M_λ⁻¹ g_λ
        st.grad.resize(m);
        for (int j = 0; j < m; ++j)
            st.grad[j] = -(J.row(j).dot(st.d) + 0.5 * st.d.dot(metrics[j] * st.d));
        return st;
    };

    Vector lam = SimplexPoint::uniform(m).lambda;
    State st = eval(lam);
    int steps = 0;
    double gap;
    for (;;) {
        const int jstar = argmin_index(st.grad);
        gap = lam.dot(st.grad) - st.grad[jstar];
        if (gap <= tol || steps >= max_inner) break;

        // Pairwise direction (see frank_wolfe_simplex); step sizes halve
        // from the largest feasible transfer until the dual objective
        // decreases by a fraction of the first-order prediction.
        const int away = argmax_support_index(st.grad, lam);
        const double slope = st.grad[jstar] - st.grad[away];  // < 0 while gap > 0
        bool moved = false;
        for (double gamma = lam[away]; gamma >= 1e-18; gamma *= 0.5) {
            Vector cand = lam;
            transfer_weight(cand, jstar, away, gamma);
            State cst = eval(cand);
            if (cst.q < st.q && cst.q <= st.q + 0.5 * gamma * slope) {
                lam = std::move(cand);
                st = std::move(cst);
                moved = true;
                break;
            }
        }
        ++steps;
        if (!moved) break;  // no acceptable step left on the halving grid
    }

    DualResult r;
    r.lambda = lam;
    r.d = st.d;
    r.theta = -st.q;
    r.t = r.theta;  // QCP bound: ∇F_iᵀd + ½dᵀB_id ≤ t with t = θ
    r.gap = gap;
    r.inner_iters = steps;
    return r;
}

}  // namespace mopt::dual
