#pragma once

#include <array>
#include <vector>

#include "qpovm/povm.hpp"
#include "qpovm/states.hpp"

namespace qpovm {

/// Parameters of the measurement-cost experiment: a maximally mixed
/// qubit with Hamiltonian omega_s * sigma_z is copied onto a two-qubit
/// memory through a controlled flip, then read out with the biased,
/// unsharp pair E+- = ((1 - lambda +- x)/2) I + lambda P+-.
struct MeasurementModel {
    double omega_s = 1.0;
    double beta = 1.0;
    double x = 0.0;
    double lambda = 1.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Throws InvalidModelError unless x, lambda in [0,1] and x + lambda <= 1
/// within tolerance.
void validate_model(const MeasurementModel& model);

struct ModelOperators {
    DensityMatrix rho_s;  // dim 2, maximally mixed
    DensityMatrix rho_m;  // dim 4, |0><0| tensor I/2
    MatrixXcd u_sm;       // 8x8 controlled flip on S x M_A
    Effect e_plus;
    Effect e_minus;
};

ModelOperators build_model_operators(const MeasurementModel& model);

struct MeasurementOutcome {
    DensityMatrix rho_s_out;  // dim 2
    DensityMatrix rho_m_out;  // dim 4
    double p_plus = 0.0;
};

/// Full 8-dimensional simulation: joint state, unitary, outcome sandwich
/// with E_k tensored onto the register, renormalization, partial traces.
MeasurementOutcome simulate_measurement(const MeasurementModel& model);

/// Register entropy change S(rho_M') - S(rho_M) in bits (S(rho_M) = 1).
double delta_s_m(const MeasurementModel& model);

/// Tr[H_S (rho_S' - rho_S)] with H_S = omega_s * sigma_z.
double delta_e_s(const MeasurementModel& model);

struct EnergyReport {
    double delta_s_m = 0.0;  // bits
    double delta_e_s = 0.0;
    double e_cost = 0.0;     // delta_e_s + delta_s_m / beta
    std::array<double, 4> memory_eigenvalues{};
    double p_plus = 0.0;
    double p_minus = 0.0;
};

EnergyReport energy_cost(const MeasurementModel& model);

/// One row of the damped-AD cost trajectory: at each tau the kernel G
/// fixes x = 1 - G^2 and lambda = G^2 (theta = 0), so every row sits on
/// the x + lambda = 1 boundary.
struct AdTrajectoryRow {
    double tau = 0.0;
    double g = 0.0;
    double x = 0.0;
    double lambda = 0.0;
    double e_cost = 0.0;
};

std::vector<AdTrajectoryRow> ad_energy_trajectory(
    double coupling_r, double beta, double omega_s,
    const std::vector<double>& tau_grid);

} // namespace qpovm
