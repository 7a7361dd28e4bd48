#include "ellcf/linalg.hpp"

#include "ellcf/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace ellcf {

void validate_dispersion(const Matrix& sigma, const char* what)
{
    const std::string name = what;
    if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
        throw DomainError(name + " must be a non-empty square matrix");
    }
    if (!sigma.allFinite()) throw DomainError(name + " has non-finite entries");
    const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw DomainError(name + " is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12 * scale) {
        throw DomainError(name + " is not positive semi-definite");
    }
}

MatrixRoots matrix_roots(const Matrix& sigma)
{
    validate_dispersion(sigma, "dispersion matrix");
    const Matrix sym = 0.5 * (sigma + sigma.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    Vector lambda = es.eigenvalues().cwiseMax(0.0);
    const double top = lambda.maxCoeff();
    const double cut = 1e-12 * std::max(top, 1e-300) * static_cast<double>(sigma.rows());

    MatrixRoots out;
    out.rank = static_cast<int>((lambda.array() > cut).count());
    const Matrix& V = es.eigenvectors();
    out.symmetric_root = V * lambda.cwiseSqrt().asDiagonal() * V.transpose();
    out.symmetric_root = 0.5 * (out.symmetric_root + out.symmetric_root.transpose()).eval();

    if (out.rank == sigma.rows()) {
        Eigen::LLT<Matrix> llt(sym);
        if (llt.info() == Eigen::Success) {
            out.cholesky_factor = llt.matrixU();
            return out;
        }
    }
    out.cholesky_factor = out.symmetric_root;
    return out;
}

int numerical_rank(const Matrix& m)
{
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double tol = 1e-12 * sv(0) * static_cast<double>(std::max(m.rows(), m.cols()));
    return static_cast<int>((sv.array() > tol).count());
}

}  // namespace ellcf
