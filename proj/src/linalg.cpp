#include "mopt/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace mopt::linalg {

SymMatrix::SymMatrix(Matrix m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("SymMatrix: input must be square");
    mat_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(Eigen::Index n) {
    SymMatrix s;
    s.mat_ = Matrix::Identity(n, n);
    return s;
}

namespace {

void check_pair(Eigen::Index dim, const Vector& s, const Vector& y) {
    if (s.size() != dim || y.size() != dim)
        throw std::invalid_argument("bfgs update: dimension mismatch");
    if (!s.allFinite() || !y.allFinite())
        throw std::invalid_argument("bfgs update: non-finite input");
}

}  // namespace

bool curvature_holds(const Vector& s, const Vector& y, double curvature_tol) {
    return s.dot(y) > curvature_tol * s.norm() * y.norm();
}

InverseMetric bfgs_update_inverse(const InverseMetric& H, const Vector& s, const Vector& y,
                                  double curvature_tol) {
    check_pair(H.dim(), s, y);
    if (!curvature_holds(s, y, curvature_tol)) return H;

    const double sy = s.dot(y);
    const Vector Hy = H.apply(y);
    const double yHy = y.dot(Hy);
    // Expanded form of (I − syᵀ/sᵀy) H (I − ysᵀ/sᵀy) + ssᵀ/sᵀy.
    Matrix next = H.mat();
    next.noalias() -= (s * Hy.transpose() + Hy * s.transpose()) / sy;
    next.noalias() += ((1.0 + yHy / sy) / sy) * (s * s.transpose());
    return InverseMetric(SymMatrix(std::move(next)));
}

SymMatrix bfgs_update_primal(const SymMatrix& B, const Vector& s, const Vector& y,
                             double curvature_tol) {
    check_pair(B.dim(), s, y);
    if (!curvature_holds(s, y, curvature_tol)) return B;

    const Vector Bs = B * s;
    const double sBs = s.dot(Bs);
    if (sBs <= 0.0)
        throw std::runtime_error("bfgs_update_primal: sᵀBs ≤ 0, metric lost positive definiteness");
    const double sy = s.dot(y);
    Matrix next = B.mat();
    next.noalias() -= (Bs * Bs.transpose()) / sBs;
    next.noalias() += (y * y.transpose()) / sy;
    return SymMatrix(std::move(next));
}

bool spd_check(const SymMatrix& M, double tol) {
    Eigen::LDLT<Matrix> ldlt(M.mat());
    if (ldlt.info() != Eigen::Success) return false;
    return ldlt.vectorD().minCoeff() > tol;
}

std::pair<double, double> eig_bounds_estimate(const SymMatrix& M) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(M.mat(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_bounds_estimate: eigen solver did not converge");
    const auto& ev = es.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

}  // namespace mopt::linalg
