#include "qpovm/energy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpovm/errors.hpp"

namespace qpovm {

namespace {

constexpr double kTriangleTol = 1e-12;

Matrix2cd ket_bra(int k) {
    Matrix2cd m = Matrix2cd::Zero();
    m(k, k) = 1.0;
    return m;
}

/// E+- = ((1 - lambda +- x)/2) I + lambda P+-.
std::pair<Matrix2cd, Matrix2cd> readout_effects(const MeasurementModel& model) {
    const Observable q = observable_from_angles(model.theta, model.phi);
    const Matrix2cd p_plus = 0.5 * (identity2() + q.matrix);
    const Matrix2cd p_minus = 0.5 * (identity2() - q.matrix);
    const double w_plus = 0.5 * (1.0 - model.lambda + model.x);
    const double w_minus = 0.5 * (1.0 - model.lambda - model.x);
    return {w_plus * identity2() + model.lambda * p_plus,
            w_minus * identity2() + model.lambda * p_minus};
}

} // namespace

void validate_model(const MeasurementModel& model) {
    std::ostringstream msg;
    if (!(model.x >= 0.0 && model.x <= 1.0)) {
        msg << "bias x = " << model.x << " outside [0,1]";
        throw InvalidModelError(msg.str());
    }
    if (!(model.lambda >= 0.0 && model.lambda <= 1.0)) {
        msg << "sharpness lambda = " << model.lambda << " outside [0,1]";
        throw InvalidModelError(msg.str());
    }
    if (model.x + model.lambda > 1.0 + kTriangleTol) {
        msg << "x + lambda = " << model.x + model.lambda
            << " violates POVM positivity (must be <= 1)";
        throw InvalidModelError(msg.str());
    }
    if (!std::isfinite(model.omega_s) || !std::isfinite(model.beta))
        throw InvalidModelError("omega_s and beta must be finite");
}

ModelOperators build_model_operators(const MeasurementModel& model) {
    validate_model(model);

    const MatrixXcd rho_s = 0.5 * MatrixXcd::Identity(2, 2);
    const MatrixXcd rho_m = kron(ket_bra(0), 0.5 * identity2());

    // Controlled flip on S x M_A, identity on M_B.
    const MatrixXcd u_sm = kron(kron(ket_bra(0), identity2()), identity2()) +
                           kron(kron(ket_bra(1), sigma_x()), identity2());

    const auto [e_plus, e_minus] = readout_effects(model);
    return {DensityMatrix::from_matrix(rho_s),
            DensityMatrix::from_matrix(rho_m), u_sm,
            Effect::from_matrix(e_plus), Effect::from_matrix(e_minus)};
}

MeasurementOutcome simulate_measurement(const MeasurementModel& model) {
    const ModelOperators ops = build_model_operators(model);

    const MatrixXcd joint = kron(ops.rho_s.matrix(), ops.rho_m.matrix());
    const MatrixXcd evolved = ops.u_sm * joint * ops.u_sm.adjoint();

    const MatrixXcd sandwich_plus =
        kron(kron(MatrixXcd::Identity(2, 2), ops.e_plus.matrix()), identity2());
    const MatrixXcd sandwich_minus =
        kron(kron(MatrixXcd::Identity(2, 2), ops.e_minus.matrix()), identity2());

    const MatrixXcd branch_plus = sandwich_plus * evolved * sandwich_plus.adjoint();
    const MatrixXcd branch_minus =
        sandwich_minus * evolved * sandwich_minus.adjoint();

    const double weight_plus = branch_plus.trace().real();
    const double total = weight_plus + branch_minus.trace().real();
    if (total < 1e-14)
        throw InvalidModelError("measurement branches carry no weight");

    const DensityMatrix rho_sm =
        DensityMatrix::from_matrix((branch_plus + branch_minus) / total);
    return {partial_trace(rho_sm, 2, 4, Subsystem::second),
            partial_trace(rho_sm, 2, 4, Subsystem::first), weight_plus / total};
}

double delta_s_m(const MeasurementModel& model) {
    return von_neumann_entropy(simulate_measurement(model).rho_m_out) - 1.0;
}

double delta_e_s(const MeasurementModel& model) {
    const DensityMatrix rho_s_out = simulate_measurement(model).rho_s_out;
    // Initial state is maximally mixed, so Tr[H rho_S] = 0.
    return model.omega_s * (sigma_z() * rho_s_out.matrix()).trace().real();
}

EnergyReport energy_cost(const MeasurementModel& model) {
    if (model.beta <= 0.0)
        throw InvalidModelError("inverse temperature beta must be positive");
    const MeasurementOutcome outcome = simulate_measurement(model);

    EnergyReport report;
    report.delta_s_m = von_neumann_entropy(outcome.rho_m_out) - 1.0;
    report.delta_e_s =
        model.omega_s * (sigma_z() * outcome.rho_s_out.matrix()).trace().real();
    report.e_cost = report.delta_e_s + report.delta_s_m / model.beta;

    const VectorXd eigs = outcome.rho_m_out.eigenvalues();
    for (int i = 0; i < 4; ++i)
        report.memory_eigenvalues[static_cast<std::size_t>(i)] = eigs[i];
    report.p_plus = outcome.p_plus;
    report.p_minus = 1.0 - outcome.p_plus;
    return report;
}

std::vector<AdTrajectoryRow> ad_energy_trajectory(
    double coupling_r, double beta, double omega_s,
    const std::vector<double>& tau_grid) {
    std::vector<AdTrajectoryRow> rows;
    rows.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        const double g = ad_memory_kernel(tau, coupling_r);
        AdTrajectoryRow row;
        row.tau = tau;
        row.g = g;
        row.lambda = std::clamp(g * g, 0.0, 1.0);
        row.x = 1.0 - row.lambda;
        MeasurementModel model;
        model.omega_s = omega_s;
        model.beta = beta;
        model.x = row.x;
        model.lambda = row.lambda;
        model.theta = 0.0;
        model.phi = 0.0;
        row.e_cost = energy_cost(model).e_cost;
        rows.push_back(row);
    }
    return rows;
}

} // namespace qpovm
