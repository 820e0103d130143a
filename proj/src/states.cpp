#include "qpovm/states.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace qpovm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

void require_hermitian(const MatrixXcd& m, const char* what) {
    const double res = hermiticity_residual(m);
    if (res > tol::hermitian) {
        std::ostringstream msg;
        msg << what << ": hermiticity residual " << res;
        throw InvalidStateError(msg.str());
    }
}

} // namespace

DensityMatrix DensityMatrix::from_matrix(const MatrixXcd& m) {
    if (m.rows() != m.cols())
        throw DimensionError("density matrix must be square");
    const int d = static_cast<int>(m.rows());
    if (d != 2 && d != 4 && d != 8)
        throw DimensionError("density matrix dimension must be 2, 4 or 8");
    require_hermitian(m, "density matrix");
    const double tr_dev = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
    if (tr_dev > tol::trace) {
        std::ostringstream msg;
        msg << "density matrix trace deviates from 1 by " << tr_dev;
        throw InvalidStateError(msg.str());
    }
    MatrixXcd sym = symmetrized(m);
    const double min_eig = hermitian_eigenvalues(sym).minCoeff();
    if (min_eig < tol::psd) {
        std::ostringstream msg;
        msg << "density matrix has negative eigenvalue " << min_eig;
        throw InvalidStateError(msg.str());
    }
    return DensityMatrix(std::move(sym));
}

Effect Effect::from_matrix(const Matrix2cd& m) {
    require_hermitian(m, "effect");
    Matrix2cd sym = symmetrized(m);
    const VectorXd eigs = hermitian_eigenvalues(sym);
    if (eigs.minCoeff() < tol::psd)
        throw InvalidStateError("effect has negative eigenvalue");
    if (eigs.maxCoeff() > 1.0 - tol::psd)
        throw InvalidStateError("effect has eigenvalue above 1");
    return Effect(std::move(sym));
}

DensityMatrix bloch_to_density(const BlochVector& b) {
    if (b.norm() > 1.0 + 1e-12)
        throw InvalidStateError("Bloch vector outside the unit ball");
    Matrix2cd m = 0.5 * identity2();
    for (int j = 0; j < 3; ++j) m += 0.5 * b.r[j] * pauli(j + 1);
    return DensityMatrix::from_matrix(m);
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2)
        throw DimensionError("Bloch vector is defined for qubits only");
    BlochVector b;
    for (int j = 0; j < 3; ++j)
        b.r[j] = (pauli(j + 1) * rho.matrix()).trace().real();
    return b;
}

std::pair<double, Vector3d> pauli_components(const Matrix2cd& h) {
    require_hermitian(h, "pauli decomposition input");
    const double c0 = 0.5 * h.trace().real();
    Vector3d c;
    for (int j = 0; j < 3; ++j) c[j] = 0.5 * (pauli(j + 1) * h).trace().real();
    return {c0, c};
}

Observable observable_from_angles(double theta, double phi) {
    Observable q;
    q.theta = wrap_angle(theta);
    q.phi = wrap_angle(phi);
    if (q.theta > std::numbers::pi) {
        // Q(theta, phi) = Q(2pi - theta, phi + pi); keep theta in [0, pi].
        q.theta = kTwoPi - q.theta;
        q.phi = wrap_angle(q.phi + std::numbers::pi);
    }
    const double ct = std::cos(q.theta);
    const double st = std::sin(q.theta);
    const std::complex<double> e_plus(std::cos(q.phi), std::sin(q.phi));
    q.matrix << ct, e_plus * st, std::conj(e_plus) * st, -ct;
    return q;
}

std::pair<Effect, Effect> eigenprojectors(const Observable& q) {
    const Matrix2cd plus = 0.5 * (identity2() + q.matrix);
    const Matrix2cd minus = 0.5 * (identity2() - q.matrix);
    return {Effect::from_matrix(plus), Effect::from_matrix(minus)};
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const VectorXd eigs = rho.eigenvalues();
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        const double p = eigs[i];
        if (p < -1e-8) {
            std::ostringstream msg;
            msg << "entropy of a state with eigenvalue " << p;
            throw InvalidStateError(msg.str());
        }
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionError("trace distance between states of unequal dimension");
    const VectorXd eigs = hermitian_eigenvalues(rho.matrix() - sigma.matrix());
    return 0.5 * eigs.cwiseAbs().sum();
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_first,
                            int dim_second, Subsystem traced) {
    if (dim_first < 1 || dim_second < 1 ||
        dim_first * dim_second != rho.dim())
        throw DimensionError("partial trace: declared factors do not match dimension");

    const MatrixXcd& m = rho.matrix();
    const int kept = (traced == Subsystem::first) ? dim_second : dim_first;
    MatrixXcd out = MatrixXcd::Zero(kept, kept);
    if (traced == Subsystem::first) {
        for (int a = 0; a < dim_first; ++a)
            for (int i = 0; i < dim_second; ++i)
                for (int j = 0; j < dim_second; ++j)
                    out(i, j) += m(a * dim_second + i, a * dim_second + j);
    } else {
        for (int b = 0; b < dim_second; ++b)
            for (int i = 0; i < dim_first; ++i)
                for (int j = 0; j < dim_first; ++j)
                    out(i, j) += m(i * dim_second + b, j * dim_second + b);
    }
    return DensityMatrix::from_matrix(out);
}

} // namespace qpovm
