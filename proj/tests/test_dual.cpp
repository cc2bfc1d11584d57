#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "mopt/dual.hpp"

using namespace mopt::dual;
using mopt::linalg::eig_bounds_estimate;
using mopt::test::random_matrix;
using mopt::test::random_spd;
using mopt::test::random_vector;

namespace {

double quad_obj(const Matrix& g, const Vector& lam) { return 0.5 * lam.dot(g * lam); }

// Closed form for m=2: λ₁* = clamp((G₂₂−G₁₂)/(G₁₁−2G₁₂+G₂₂), 0, 1).
double closed_form_lambda1(const Matrix& g) {
    const double den = g(0, 0) - 2.0 * g(0, 1) + g(1, 1);
    if (den <= 0.0)
        return quad_obj(g, Vector{{1.0, 0.0}}) <= quad_obj(g, Vector{{0.0, 1.0}}) ? 1.0 : 0.0;
    return std::clamp((g(1, 1) - g(0, 1)) / den, 0.0, 1.0);
}

}  // namespace

TEST_SUITE("dual") {

TEST_CASE("gram matrix of orthonormal gradients is the identity") {
    Matrix j(2, 2);
    j << 1, 0, 0, 1;
    const Matrix g = build_gram(j, InverseMetric::identity(2));
    CHECK((g - Matrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("gram matrix at the worked EX51 state") {
    Matrix j(2, 2);
    j << 0.02, 0.02, -2.0, -2.0;
    const Matrix g = build_gram(j, InverseMetric::identity(2));
    CHECK(g(0, 0) == doctest::Approx(0.0008).epsilon(1e-13));
    CHECK(g(0, 1) == doctest::Approx(-0.08).epsilon(1e-13));
    CHECK(g(1, 0) == doctest::Approx(-0.08).epsilon(1e-13));
    CHECK(g(1, 1) == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("gram matrix honors the metric") {
    Matrix j(2, 2);
    j << 2, 0, 0, -2;
    Matrix h(2, 2);
    h << 0.5, 0, 0, 1;
    const Matrix g = build_gram(j, InverseMetric{SymMatrix(h)});
    Matrix expected(2, 2);
    expected << 2, 0, 0, 4;
    CHECK((g - expected).norm() < 1e-14);

    CHECK_THROWS_AS(build_gram(Matrix::Zero(2, 3), InverseMetric::identity(2)),
                    std::invalid_argument);
}

TEST_CASE("frank-wolfe solves the identity instance") {
    const auto r = frank_wolfe_simplex(Matrix::Identity(2, 2));
    CHECK(r.lambda[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(r.lambda[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(r.gap <= kDefaultGapTol);
}

TEST_CASE("one-objective simplex is a single point") {
    Matrix g(1, 1);
    g << 3.7;
    const auto r = frank_wolfe_simplex(g);
    CHECK(r.lambda[0] == 1.0);
    CHECK(r.inner_iters == 0);
    CHECK(r.gap == 0.0);
}

TEST_CASE("opposed gradients cancel at equal weights") {
    // EX41 at (−1,2): rows ±(4,4), so the combination vanishes at (½,½).
    Matrix j(2, 2);
    j << -4, -4, 4, 4;
    const Matrix g = build_gram(j, InverseMetric::identity(2));
    const auto r = frank_wolfe_simplex(g);
    CHECK(r.lambda[0] == doctest::Approx(0.5));
    CHECK(quad_obj(g, r.lambda) == doctest::Approx(0.0));
}

TEST_CASE("objective matches the two-objective closed form on random PSD instances") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const Matrix r2 = random_matrix(rng, 2, 2);
        const Matrix g = r2 * r2.transpose();
        const auto fw = frank_wolfe_simplex(g);
        const double l1 = closed_form_lambda1(g);
        const double q_star = quad_obj(g, Vector{{l1, 1.0 - l1}});
        CHECK(quad_obj(g, fw.lambda) <= q_star + 1e-8);
        CHECK(quad_obj(g, fw.lambda) >= q_star - 1e-12);
    }
}

TEST_CASE("three-objective instances match a simplex grid search") {
    std::mt19937_64 rng(77);
    const int steps = 100;  // 1e-2 resolution; acceptance runs the finer sweep
    for (int trial = 0; trial < 25; ++trial) {
        const Matrix r3 = random_matrix(rng, 3, 3);
        const Matrix g = r3 * r3.transpose();
        const auto fw = frank_wolfe_simplex(g);
        double best = std::numeric_limits<double>::infinity();
        for (int a = 0; a <= steps; ++a)
            for (int b = 0; b <= steps - a; ++b) {
                const Vector lam{{a / double(steps), b / double(steps),
                                  (steps - a - b) / double(steps)}};
                best = std::min(best, quad_obj(g, lam));
            }
        CHECK(quad_obj(g, fw.lambda) <= best + 1e-10);
    }
}

TEST_CASE("simplex feasibility is maintained to machine precision") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 5);
        const Matrix rm = random_matrix(rng, m, m);
        const auto fw = frank_wolfe_simplex(rm * rm.transpose());
        CHECK((fw.lambda.array() >= 0.0).all());
        CHECK(std::abs(fw.lambda.sum() - 1.0) <= 1e-12);
    }
}

TEST_CASE("subproblem at the EX51 critical point recovers the multiplier") {
    Matrix j(2, 2);
    j << 0.02, 0.02, -2.0, -2.0;
    const auto r = solve_subproblem(j, InverseMetric::identity(2));
    CHECK(std::abs(r.lambda[0] - 100.0 / 101.0) < 1e-6);
    CHECK(std::abs(r.lambda[1] - 1.0 / 101.0) < 1e-6);
    CHECK(r.d.norm() <= 1e-6);
    CHECK(std::abs(r.theta) <= 1e-12);
}

TEST_CASE("single objective reduces to a metric gradient step") {
    Matrix j(1, 1);
    j << 2.0;  // f(x)=x² at x=1
    const auto r = solve_subproblem(j, InverseMetric::identity(1));
    CHECK(r.lambda[0] == 1.0);
    CHECK(r.d[0] == doctest::Approx(-2.0));
    CHECK(r.theta == doctest::Approx(-2.0));
    CHECK(r.t == doctest::Approx(-4.0));
}

TEST_CASE("worked JOS1 state against a grid oracle") {
    Matrix j(2, 2);
    j << 2, 0, 0, -2;  // JOS1 (n=2) at (2,0)
    const auto r = solve_subproblem(j, InverseMetric::identity(2));
    CHECK(r.lambda[0] == doctest::Approx(0.5));
    CHECK(r.d[0] == doctest::Approx(-1.0));
    CHECK(r.d[1] == doctest::Approx(1.0));
    CHECK(r.theta == doctest::Approx(-1.0));

    double best = std::numeric_limits<double>::infinity();
    const Matrix g = build_gram(j, InverseMetric::identity(2));
    for (int i = 0; i <= 10000; ++i) {
        const double l = i / 10000.0;
        best = std::min(best, quad_obj(g, Vector{{l, 1.0 - l}}));
    }
    CHECK(-r.theta == doctest::Approx(best).epsilon(1e-8));
}

TEST_CASE("criticality value is nonpositive with the Lemma-style sandwich") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 500; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const int n = 2 + static_cast<int>(rng() % 5);
        const Matrix j = random_matrix(rng, m, n, 2.0);
        const InverseMetric h{random_spd(rng, n, 0.2, 3.0)};
        // Rank-deficient instances (m > n) need more than the default inner
        // budget before the weights settle on the optimal face.
        const auto r = solve_subproblem(j, h, 1e-12, 50000);
        CHECK(r.gap <= 1e-12);

        CHECK(r.theta <= 0.0);
        const auto [h_lo, h_hi] = eig_bounds_estimate(h.sym());
        const double a = 1.0 / h_hi, b = 1.0 / h_lo;  // spectrum of B = H⁻¹
        const double nd2 = r.d.squaredNorm();
        CHECK(0.5 * a * nd2 <= std::abs(r.theta) * (1.0 + 1e-9) + 1e-300);
        CHECK(std::abs(r.theta) <= 0.5 * b * nd2 * (1.0 + 1e-9) + 1e-300);

        // KKT identities: rows below t (the worst row exceeds t by exactly
        // the final gap), weighted rows equal to t = 2θ.
        const Vector jd = j * r.d;
        const double slack = r.gap + 1e-9 * j.norm() * r.d.norm() + 1e-15;
        for (int i = 0; i < m; ++i) CHECK(jd[i] <= r.t + slack);
        CHECK(r.lambda.dot(jd) == doctest::Approx(r.t).epsilon(1e-9));
        CHECK(r.t == doctest::Approx(2.0 * r.theta));
    }
}

TEST_CASE("gap certifies suboptimality of the returned weights") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix r2 = random_matrix(rng, 2, 2);
        const Matrix g = r2 * r2.transpose();
        const auto fw = frank_wolfe_simplex(g, 1e-9);
        const double l1 = closed_form_lambda1(g);
        const double q_star = quad_obj(g, Vector{{l1, 1.0 - l1}});
        if (fw.gap <= 1e-9) CHECK(quad_obj(g, fw.lambda) - q_star <= fw.gap + 1e-15);
    }
}

TEST_CASE("per-objective dual collapses onto the shared dual for equal metrics") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const int n = 2 + static_cast<int>(rng() % 4);
        const Matrix j = random_matrix(rng, m, n, 2.0);
        const SymMatrix b = random_spd(rng, n, 0.5, 2.0);
        const std::vector<SymMatrix> mats(m, b);

        const auto qnm = solve_qnm_dual(j, mats);
        const InverseMetric h{SymMatrix(b.mat().inverse())};
        const auto qp = solve_subproblem(j, h);
        CHECK(qnm.theta == doctest::Approx(qp.theta).epsilon(1e-8));
    }
}

TEST_CASE("per-objective dual with one objective is a plain metric solve") {
    Matrix j(1, 2);
    j << 1.0, -2.0;
    const SymMatrix b = SymMatrix(2.0 * Matrix::Identity(2, 2));
    const auto r = solve_qnm_dual(j, {b});
    CHECK(r.lambda[0] == 1.0);
    CHECK(r.d[0] == doctest::Approx(-0.5));
    CHECK(r.d[1] == doctest::Approx(1.0));
}

TEST_CASE("per-objective dual matches a fine lambda grid") {
    // g1=(1,0), g2=(0,1), B1=I, B2=2I: M_λ = (2−λ1)I.
    Matrix j(2, 2);
    j << 1, 0, 0, 1;
    const std::vector<SymMatrix> mats = {SymMatrix::identity(2),
                                         SymMatrix(2.0 * Matrix::Identity(2, 2))};
    const auto r = solve_qnm_dual(j, mats);

    double best = std::numeric_limits<double>::infinity(), best_l = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double l = i / 10000.0;
        const double q = (l * l + (1.0 - l) * (1.0 - l)) / (2.0 * (2.0 - l));
        if (q < best) {
            best = q;
            best_l = l;
        }
    }
    CHECK(-r.theta == doctest::Approx(best).epsilon(1e-6));
    CHECK(std::abs(r.lambda[0] - best_l) < 1e-3);
    CHECK(r.theta <= 0.0);
}

TEST_CASE("per-objective dual rejects indefinite metrics") {
    Matrix j(1, 2);
    j << 1.0, 0.0;
    Matrix ind(2, 2);
    ind << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(solve_qnm_dual(j, {SymMatrix(ind)}), std::runtime_error);
}

}  // TEST_SUITE
