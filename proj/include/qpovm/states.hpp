#pragma once

#include <utility>

#include "qpovm/errors.hpp"
#include "qpovm/linalg.hpp"

namespace qpovm {

/// Real 3-vector on (or inside) the Bloch ball.
struct BlochVector {
    Vector3d r{0.0, 0.0, 0.0};

    double norm() const { return r.norm(); }
};

/// Hermitian, unit-trace, positive-semidefinite complex matrix of
/// dimension 2, 4 or 8. Construction validates all three properties;
/// the stored matrix is symmetrized so later eigensolves see an exactly
/// Hermitian input.
class DensityMatrix {
public:
    static DensityMatrix from_matrix(const MatrixXcd& m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const MatrixXcd& matrix() const { return mat_; }

    /// Eigenvalues in ascending order.
    VectorXd eigenvalues() const { return hermitian_eigenvalues(mat_); }

private:
    explicit DensityMatrix(MatrixXcd m) : mat_(std::move(m)) {}

    MatrixXcd mat_;
};

/// Dichotomic observable with unit-length Bloch axis; eigenvalues are +-1.
struct Observable {
    Matrix2cd matrix;
    double theta = 0.0;
    double phi = 0.0;
};

/// POVM element: 2x2 Hermitian with spectrum in [0, 1] (up to tolerance).
class Effect {
public:
    static Effect from_matrix(const Matrix2cd& m);

    const Matrix2cd& matrix() const { return mat_; }

private:
    explicit Effect(Matrix2cd m) : mat_(std::move(m)) {}

    Matrix2cd mat_;
};

DensityMatrix bloch_to_density(const BlochVector& r);
BlochVector density_to_bloch(const DensityMatrix& rho);

/// Decompose a 2x2 Hermitian H = c0*I + c.sigma; returns (c0, c).
std::pair<double, Vector3d> pauli_components(const Matrix2cd& h);

/// Q(Theta, Phi) = [[cos T, e^{+i P} sin T], [e^{-i P} sin T, -cos T]].
/// Angles are wrapped into [0, 2pi); never throws.
Observable observable_from_angles(double theta, double phi);

/// Eigenprojectors (1 +- Q)/2 of a dichotomic observable.
std::pair<Effect, Effect> eigenprojectors(const Observable& q);

/// von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// (1/2) * trace norm of (rho - sigma).
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

enum class Subsystem { first, second };

/// Partial trace over one tensor factor of a bipartite state with the
/// declared factor dimensions (dim_first * dim_second must equal dim).
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_first,
                            int dim_second, Subsystem traced);

} // namespace qpovm
