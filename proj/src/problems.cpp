#include "mopt/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace mopt::problems {

namespace {

Vector constant_vector(int n, double v) { return Vector::Constant(n, v); }

ProblemDef make_deb() {
    // f1 = x1, f2 = g(x2)/x1 with a bimodal g; requires x1 > 0.
    auto g_parts = [](double x2) {
        const double u1 = (x2 - 0.2) / 0.004;
        const double u2 = (x2 - 0.6) / 0.4;
        const double a = std::exp(-u1 * u1);
        const double b = std::exp(-u2 * u2);
        return std::array<double, 4>{a, b, u1, u2};
    };
    auto guard = [](const Vector& x) {
        if (x[0] <= 1e-12) throw infeasible_point("Deb: x1 must be positive");
    };
    ProblemDef p;
    p.name = "Deb";
    p.n = 2;
    p.m = 2;
    p.lower = Vector{{0.1, 0.1}};
    p.upper = Vector{{1.0, 1.0}};
    p.objectives = [=](const Vector& x) {
        guard(x);
        auto [a, b, u1, u2] = g_parts(x[1]);
        const double g = 2.0 - a - 0.8 * b;
        return Vector{{x[0], g / x[0]}};
    };
    p.gradients = [=](const Vector& x) {
        guard(x);
        auto [a, b, u1, u2] = g_parts(x[1]);
        const double g = 2.0 - a - 0.8 * b;
        const double da = a * (-2.0 * u1 / 0.004);
        const double db = b * (-2.0 * u2 / 0.4);
        const double gp = -da - 0.8 * db;
        Matrix jac(2, 2);
        jac.row(0) << 1.0, 0.0;
        jac.row(1) << -g / (x[0] * x[0]), gp / x[0];
        return jac;
    };
    p.hessians = [=](const Vector& x) {
        guard(x);
        auto [a, b, u1, u2] = g_parts(x[1]);
        const double g = 2.0 - a - 0.8 * b;
        const double da = a * (-2.0 * u1 / 0.004);
        const double db = b * (-2.0 * u2 / 0.4);
        const double gp = -da - 0.8 * db;
        const double d2a = da * (-2.0 * u1 / 0.004) + a * (-2.0 / (0.004 * 0.004));
        const double d2b = db * (-2.0 * u2 / 0.4) + b * (-2.0 / (0.4 * 0.4));
        const double gpp = -d2a - 0.8 * d2b;
        Matrix h1 = Matrix::Zero(2, 2);
        Matrix h2(2, 2);
        const double x1 = x[0];
        h2 << 2.0 * g / (x1 * x1 * x1), -gp / (x1 * x1), -gp / (x1 * x1), gpp / x1;
        return std::vector<Matrix>{h1, h2};
    };
    return p;
}

ProblemDef make_pnr() {
    ProblemDef p;
    p.name = "PNR";
    p.n = 2;
    p.m = 2;
    p.lower = constant_vector(2, -2.0);
    p.upper = constant_vector(2, 2.0);
    p.objectives = [](const Vector& x) {
        const double x1 = x[0], x2 = x[1];
        const double f1 = std::pow(x1, 4) + std::pow(x2, 4) - x1 * x1 + x2 * x2 -
                          10.0 * x1 * x2 + 0.25 * x1 + 20.0;
        const double f2 = (x1 - 1.0) * (x1 - 1.0) + x2 * x2;
        return Vector{{f1, f2}};
    };
    p.gradients = [](const Vector& x) {
        const double x1 = x[0], x2 = x[1];
        Matrix jac(2, 2);
        jac.row(0) << 4.0 * x1 * x1 * x1 - 2.0 * x1 - 10.0 * x2 + 0.25,
            4.0 * x2 * x2 * x2 + 2.0 * x2 - 10.0 * x1;
        jac.row(1) << 2.0 * (x1 - 1.0), 2.0 * x2;
        return jac;
    };
    p.hessians = [](const Vector& x) {
        const double x1 = x[0], x2 = x[1];
        Matrix h1(2, 2), h2(2, 2);
        h1 << 12.0 * x1 * x1 - 2.0, -10.0, -10.0, 12.0 * x2 * x2 + 2.0;
        h2 << 2.0, 0.0, 0.0, 2.0;
        return std::vector<Matrix>{h1, h2};
    };
    return p;
}

ProblemDef make_wit0() {
    // Both objectives share √(1+(x1+x2)²), √(1+(x1−x2)²) and the Gaussian
    // bump; only the ±(x1−x2)/2 term differs.
    ProblemDef p;
    p.name = "WIT0";
    p.n = 2;
    p.m = 2;
    p.lower = constant_vector(2, -2.0);
    p.upper = constant_vector(2, 2.0);
    p.objectives = [](const Vector& x) {
        const double s = x[0] + x[1], q = x[0] - x[1];
        const double s1 = std::sqrt(1.0 + s * s), s2 = std::sqrt(1.0 + q * q);
        const double e = std::exp(-q * q);
        const double common = 0.5 * (s1 + s2) + 0.6 * e;
        return Vector{{common + 0.5 * q, common - 0.5 * q}};
    };
    p.gradients = [](const Vector& x) {
        const double s = x[0] + x[1], q = x[0] - x[1];
        const double s1 = std::sqrt(1.0 + s * s), s2 = std::sqrt(1.0 + q * q);
        const double e = std::exp(-q * q);
        const double cs = 0.5 * s / s1;          // ∂ of ½√(1+s²) w.r.t. s
        const double cq = 0.5 * q / s2 - 1.2 * q * e;
        Matrix jac(2, 2);
        jac.row(0) << cs + cq + 0.5, cs - cq - 0.5;
        jac.row(1) << cs + cq - 0.5, cs - cq + 0.5;
        return jac;
    };
    p.hessians = [](const Vector& x) {
        const double s = x[0] + x[1], q = x[0] - x[1];
        const double s1 = std::sqrt(1.0 + s * s), s2 = std::sqrt(1.0 + q * q);
        const double e = std::exp(-q * q);
        const double a = 0.5 / (s1 * s1 * s1);
        const double b = 0.5 / (s2 * s2 * s2) + 0.6 * (4.0 * q * q - 2.0) * e;
        Matrix h(2, 2);
        h << a + b, a - b, a - b, a + b;
        return std::vector<Matrix>{h, h};
    };
    return p;
}

ProblemDef make_wit(int index, double lam) {
    ProblemDef p;
    p.name = "WIT" + std::to_string(index);
    p.n = 2;
    p.m = 2;
    p.lower = constant_vector(2, -2.0);
    p.upper = constant_vector(2, 2.0);
    p.objectives = [lam](const Vector& x) {
        const double u = x[0] - 2.0, v = x[1] - 2.0;
        const double f1 = lam * (u * u + v * v) +
                          (1.0 - lam) * (std::pow(u, 4) + std::pow(v, 8));
        const double a = x[0] + 2.0 * lam, b = x[1] + 2.0 * lam;
        const double f2 = a * a + b * b;
        if (!std::isfinite(f1) || !std::isfinite(f2))
            throw infeasible_point("WIT: objective overflow");
        return Vector{{f1, f2}};
    };
    p.gradients = [lam](const Vector& x) {
        const double u = x[0] - 2.0, v = x[1] - 2.0;
        Matrix jac(2, 2);
        jac.row(0) << 2.0 * lam * u + 4.0 * (1.0 - lam) * std::pow(u, 3),
            2.0 * lam * v + 8.0 * (1.0 - lam) * std::pow(v, 7);
        jac.row(1) << 2.0 * (x[0] + 2.0 * lam), 2.0 * (x[1] + 2.0 * lam);
        return jac;
    };
    p.hessians = [lam](const Vector& x) {
        const double u = x[0] - 2.0, v = x[1] - 2.0;
        Matrix h1(2, 2), h2(2, 2);
        h1 << 2.0 * lam + 12.0 * (1.0 - lam) * u * u, 0.0, 0.0,
            2.0 * lam + 56.0 * (1.0 - lam) * std::pow(v, 6);
        h2 << 2.0, 0.0, 0.0, 2.0;
        return std::vector<Matrix>{h1, h2};
    };
    return p;
}

ProblemDef make_ex41() {
    ProblemDef p;
    p.name = "EX41";
    p.n = 2;
    p.m = 2;
    p.lower = constant_vector(2, -2.0);
    p.upper = constant_vector(2, 2.0);
    p.objectives = [](const Vector& x) {
        const double f1 = 2.0 * x[0] * x[0] - x[1] * x[1];
        const double f2 = -(x[0] - 1.0) * (x[0] - 1.0) + 2.0 * (x[1] - 1.0) * (x[1] - 1.0);
        return Vector{{f1, f2}};
    };
    p.gradients = [](const Vector& x) {
        Matrix jac(2, 2);
        jac.row(0) << 4.0 * x[0], -2.0 * x[1];
        jac.row(1) << -2.0 * (x[0] - 1.0), 4.0 * (x[1] - 1.0);
        return jac;
    };
    p.hessians = [](const Vector&) {
        Matrix h1(2, 2), h2(2, 2);
        h1 << 4.0, 0.0, 0.0, -2.0;
        h2 << -2.0, 0.0, 0.0, 4.0;
        return std::vector<Matrix>{h1, h2};
    };
    return p;
}

ProblemDef make_ex51() {
    ProblemDef p;
    p.name = "EX51";
    p.n = 2;
    p.m = 2;
    p.lower = constant_vector(2, -2.0);
    p.upper = constant_vector(2, 2.0);
    p.objectives = [](const Vector& x) {
        const double f1 = (x[0] * x[0] + x[1] * x[1]) / 100.0;
        const double f2 = (x[0] - 2.0) * (x[0] - 2.0) + (x[1] - 2.0) * (x[1] - 2.0);
        return Vector{{f1, f2}};
    };
    p.gradients = [](const Vector& x) {
        Matrix jac(2, 2);
        jac.row(0) << 0.02 * x[0], 0.02 * x[1];
        jac.row(1) << 2.0 * (x[0] - 2.0), 2.0 * (x[1] - 2.0);
        return jac;
    };
    p.hessians = [](const Vector&) {
        Matrix h1(2, 2), h2(2, 2);
        h1 << 0.02, 0.0, 0.0, 0.02;
        h2 << 2.0, 0.0, 0.0, 2.0;
        return std::vector<Matrix>{h1, h2};
    };
    return p;
}

const std::map<std::string, std::function<ProblemDef()>>& registry() {
    static const std::map<std::string, std::function<ProblemDef()>> reg = {
        {"Deb", make_deb},
        {"JOS1a", [] { return make_jos1(100, 2.0); }},
        {"JOS1b", [] { return make_jos1(200, 2.0); }},
        {"JOS1c", [] { return make_jos1(500, 2.0); }},
        {"JOS1d", [] { return make_jos1(1000, 2.0); }},
        {"JOS1e", [] { return make_jos1(100, 10.0); }},
        {"JOS1f", [] { return make_jos1(100, 50.0); }},
        {"JOS1g", [] { return make_jos1(100, 100.0); }},
        {"JOS1h", [] { return make_jos1(200, 100.0); }},
        {"PNR", make_pnr},
        {"WIT0", make_wit0},
        {"WIT1", [] { return make_wit(1, 0.0); }},
        {"WIT2", [] { return make_wit(2, 0.5); }},
        {"WIT3", [] { return make_wit(3, 0.9); }},
        {"WIT4", [] { return make_wit(4, 0.99); }},
        {"WIT5", [] { return make_wit(5, 0.999); }},
        {"WIT6", [] { return make_wit(6, 1.0); }},
        {"EX41", make_ex41},
        {"EX51", make_ex51},
    };
    return reg;
}

}  // namespace

ProblemDef make_jos1(int n, double box_halfwidth) {
    ProblemDef p;
    p.name = "JOS1(n=" + std::to_string(n) + ")";
    p.n = n;
    p.m = 2;
    p.lower = constant_vector(n, -box_halfwidth);
    p.upper = constant_vector(n, box_halfwidth);
    const double inv_n = 1.0 / n;
    p.objectives = [inv_n](const Vector& x) {
        const double f1 = inv_n * x.squaredNorm();
        const double f2 = inv_n * (x.array() - 2.0).square().sum();
        return Vector{{f1, f2}};
    };
    p.gradients = [inv_n, n](const Vector& x) {
        Matrix jac(2, n);
        jac.row(0) = 2.0 * inv_n * x.transpose();
        jac.row(1) = 2.0 * inv_n * (x.array() - 2.0).matrix().transpose();
        return jac;
    };
    p.hessians = [inv_n, n](const Vector&) {
        Matrix h = 2.0 * inv_n * Matrix::Identity(n, n);
        return std::vector<Matrix>{h, h};
    };
    return p;
}

ProblemDef get_problem(const std::string& name) {
    const auto& reg = registry();
    auto it = reg.find(name);
    if (it == reg.end()) throw std::invalid_argument("unknown problem: " + name);
    ProblemDef p = it->second();
    p.name = name;
    return p;
}

const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "Deb",  "JOS1a", "JOS1b", "JOS1c", "JOS1d", "JOS1e", "JOS1f", "JOS1g", "JOS1h",
        "PNR",  "WIT0",  "WIT1",  "WIT2",  "WIT3",  "WIT4",  "WIT5",  "WIT6",
    };
    return names;
}

const std::vector<std::string>& example_names() {
    static const std::vector<std::string> names = {"EX41", "EX51"};
    return names;
}

Vector evaluate(const ProblemDef& p, const Vector& x, EvalCounters& counters) {
    if (x.size() != p.n) throw std::invalid_argument(p.name + ": evaluate dimension mismatch");
    Vector f = p.objectives(x);
    ++counters.f_calls;
    if (!f.allFinite()) throw infeasible_point(p.name + ": non-finite objective value");
    return f;
}

Matrix jacobian(const ProblemDef& p, const Vector& x, EvalCounters& counters) {
    if (x.size() != p.n) throw std::invalid_argument(p.name + ": jacobian dimension mismatch");
    Matrix j = p.gradients(x);
    ++counters.jac_calls;
    if (!j.allFinite()) throw infeasible_point(p.name + ": non-finite gradient value");
    return j;
}

std::vector<Matrix> hessians(const ProblemDef& p, const Vector& x) {
    if (x.size() != p.n) throw std::invalid_argument(p.name + ": hessians dimension mismatch");
    return p.hessians(x);
}

double fd_check(const ProblemDef& p, const Vector& x, double h) {
    const Matrix jac = p.gradients(x);
    double worst = 0.0;
    Vector xl = x, xr = x;
    for (int j = 0; j < p.n; ++j) {
        xr[j] = x[j] + h;
        xl[j] = x[j] - h;
        const Vector fr = p.objectives(xr);
        const Vector fl = p.objectives(xl);
        xr[j] = x[j];
        xl[j] = x[j];
        for (int i = 0; i < p.m; ++i) {
            const double fd = (fr[i] - fl[i]) / (2.0 * h);
            const double err = std::abs(jac(i, j) - fd) / std::max(1.0, std::abs(jac(i, j)));
            worst = std::max(worst, err);
        }
    }
    return worst;
}

Vector sample_start(Rng& rng, const ProblemDef& p) {
    Vector x(p.n);
    for (int i = 0; i < p.n; ++i) {
        std::uniform_real_distribution<double> dist(p.lower[i], p.upper[i]);
        double v = dist(rng);
        while (v <= p.lower[i] || v >= p.upper[i]) v = dist(rng);
        x[i] = v;
    }
    return x;
}

}  // namespace mopt::problems
