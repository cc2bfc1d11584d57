#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mopt/problems.hpp"

namespace mopt::test {

using linalg::Matrix;
using linalg::SymMatrix;
using linalg::Vector;
using problems::ProblemDef;

inline Vector random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, scale);
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, scale);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

/// Random SPD matrix with eigenvalues drawn from [lo, hi].
inline SymMatrix random_spd(std::mt19937_64& rng, int n, double lo = 0.5, double hi = 2.0) {
    const Matrix a = random_matrix(rng, n, n);
    const Matrix q = Eigen::HouseholderQR<Matrix>(a).householderQ();
    std::uniform_real_distribution<double> dist(lo, hi);
    Vector eigs(n);
    for (int i = 0; i < n; ++i) eigs[i] = dist(rng);
    return SymMatrix(q * eigs.asDiagonal() * q.transpose());
}

/// Multi-objective quadratic: F_i(x) = ½xᵀA_ix + b_iᵀx.
inline ProblemDef make_quadratic(std::string name, std::vector<Matrix> as, std::vector<Vector> bs,
                                 double box = 2.0) {
    const int m = static_cast<int>(as.size());
    const int n = static_cast<int>(as[0].rows());
    ProblemDef p;
    p.name = std::move(name);
    p.n = n;
    p.m = m;
    p.lower = Vector::Constant(n, -box);
    p.upper = Vector::Constant(n, box);
    p.objectives = [as, bs, m](const Vector& x) {
        Vector f(m);
        for (int i = 0; i < m; ++i) f[i] = 0.5 * x.dot(as[i] * x) + bs[i].dot(x);
        return f;
    };
    p.gradients = [as, bs, m, n](const Vector& x) {
        Matrix jac(m, n);
        for (int i = 0; i < m; ++i) jac.row(i) = (as[i] * x + bs[i]).transpose();
        return jac;
    };
    p.hessians = [as](const Vector&) { return as; };
    return p;
}

/// Single-objective quadratic helper.
inline ProblemDef make_quadratic1(std::string name, Matrix a, Vector b, double box = 2.0) {
    return make_quadratic(std::move(name), {std::move(a)}, {std::move(b)}, box);
}

}  // namespace mopt::test
