#pragma once

#include <Eigen/Dense>

namespace qpovm {

using Eigen::Matrix2cd;
using Eigen::Matrix3d;
using Eigen::Matrix4d;
using Eigen::MatrixXcd;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace tol {
// Shared numeric tolerances. Hermiticity and trace checks are tight;
// positivity allows a small negative eigenvalue from roundoff.
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double psd = -1e-10;
inline constexpr double completeness = 1e-10;
} // namespace tol

const Matrix2cd& identity2();
const Matrix2cd& sigma_x();
const Matrix2cd& sigma_y();
const Matrix2cd& sigma_z();

/// Pauli basis element: pauli(0) = identity, pauli(1..3) = sigma_{x,y,z}.
const Matrix2cd& pauli(int j);

/// Kronecker product, row-major qubit ordering (first factor most significant).
MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);

/// max_ij |A - A^dagger| entrywise.
double hermiticity_residual(const MatrixXcd& a);

/// (A + A^dagger)/2; used before every eigensolve.
MatrixXcd symmetrized(const MatrixXcd& a);

/// Eigenvalues of a (symmetrized) Hermitian matrix, ascending.
VectorXd hermitian_eigenvalues(const MatrixXcd& a);

} // namespace qpovm
