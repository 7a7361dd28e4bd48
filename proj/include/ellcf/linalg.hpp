#pragma once

#include <Eigen/Dense>

namespace ellcf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct MatrixRoots {
    // A with A' A = Sigma (upper-triangular Cholesky factor when Sigma is
    // positive definite, the symmetric root otherwise).
    Matrix cholesky_factor;
    // Symmetric PSD square root.
    Matrix symmetric_root;
    int rank = 0;
};

/// Both square roots of a symmetric PSD matrix. Eigenvalues down to
/// -1e-12 * max(1, |Sigma|) are clamped to zero; anything more negative,
/// or asymmetry beyond 1e-12, throws DomainError.
MatrixRoots matrix_roots(const Matrix& sigma);

/// Throws DomainError naming `what` if sigma is not square, symmetric, PSD.
void validate_dispersion(const Matrix& sigma, const char* what);

/// Numerical rank with tolerance relative to the largest singular value.
int numerical_rank(const Matrix& m);

}  // namespace ellcf
