#include "qpovm/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace qpovm {

namespace {
const std::complex<double> kI(0.0, 1.0);
}

const Matrix2cd& identity2() {
    static const Matrix2cd m = Matrix2cd::Identity();
    return m;
}

const Matrix2cd& sigma_x() {
    static const Matrix2cd m = (Matrix2cd() << 0, 1, 1, 0).finished();
    return m;
}

const Matrix2cd& sigma_y() {
    static const Matrix2cd m = (Matrix2cd() << 0, -kI, kI, 0).finished();
    return m;
}

const Matrix2cd& sigma_z() {
    static const Matrix2cd m = (Matrix2cd() << 1, 0, 0, -1).finished();
    return m;
}

const Matrix2cd& pauli(int j) {
    switch (j) {
        case 0: return identity2();
        case 1: return sigma_x();
        case 2: return sigma_y();
        default: return sigma_z();
    }
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

double hermiticity_residual(const MatrixXcd& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

MatrixXcd symmetrized(const MatrixXcd& a) {
    return 0.5 * (a + a.adjoint());
}

VectorXd hermitian_eigenvalues(const MatrixXcd& a) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(symmetrized(a),
                                                    Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

} // namespace qpovm
