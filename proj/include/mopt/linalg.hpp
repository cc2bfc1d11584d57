#pragma once

#include <Eigen/Dense>
#include <utility>

namespace mopt::linalg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Relative curvature threshold: an update fires only when
/// s·y > tol·‖s‖‖y‖. A strict s·y > 0 test is too fragile near criticality.
inline constexpr double kDefaultCurvatureTol = 1e-10;

/// Dense symmetric matrix. Symmetry is exact by construction: the input is
/// symmetrized once and never mutated afterwards.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(Matrix m);
    static SymMatrix identity(Eigen::Index n);

    Eigen::Index dim() const { return mat_.rows(); }
    const Matrix& mat() const { return mat_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

    Vector operator*(const Vector& v) const { return mat_ * v; }

    /// vᵀ M v
    double quad(const Vector& v) const { return v.dot(mat_ * v); }

private:
    Matrix mat_;
};

/// The maintained matrix H_k = B_k⁻¹, symmetric positive definite.
/// Solvers start from the identity.
class InverseMetric {
public:
    InverseMetric() = default;
    explicit InverseMetric(SymMatrix h) : h_(std::move(h)) {}
    static InverseMetric identity(Eigen::Index n) { return InverseMetric(SymMatrix::identity(n)); }

    Eigen::Index dim() const { return h_.dim(); }
    const SymMatrix& sym() const { return h_; }
    const Matrix& mat() const { return h_.mat(); }

    /// H v
    Vector apply(const Vector& v) const { return h_ * v; }

private:
    SymMatrix h_;
};

/// Shared predicate so the primal and inverse updates skip on exactly the
/// same (s, y) pairs.
bool curvature_holds(const Vector& s, const Vector& y,
                     double curvature_tol = kDefaultCurvatureTol);

/// H' = (I − syᵀ/sᵀy) H (I − ysᵀ/sᵀy) + ssᵀ/sᵀy when the curvature test
/// passes; H unchanged otherwise.
InverseMetric bfgs_update_inverse(const InverseMetric& H, const Vector& s, const Vector& y,
                                  double curvature_tol = kDefaultCurvatureTol);

/// B' = B − Bssᵀ B/sᵀBs + yyᵀ/sᵀy when the curvature test passes; B
/// unchanged otherwise. Used for diagnostics mirroring of the inverse update.
SymMatrix bfgs_update_primal(const SymMatrix& B, const Vector& s, const Vector& y,
                             double curvature_tol = kDefaultCurvatureTol);

/// True iff a pivoted symmetric factorization succeeds with all pivots > tol.
bool spd_check(const SymMatrix& M, double tol = 1e-12);

/// (λ_min, λ_max) of a symmetric matrix.
std::pair<double, double> eig_bounds_estimate(const SymMatrix& M);

}  // namespace mopt::linalg
