#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qpovm/energy.hpp"
#include "qpovm/errors.hpp"
#include "qpovm/markov.hpp"
#include "qpovm/sampling.hpp"
#include "test_helpers.hpp"

using namespace qpovm;
using qpovm::test::diag2;
using qpovm::test::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

MeasurementModel make_model(double x, double lambda, double theta = 0.0,
                            double phi = 0.0) {
    MeasurementModel m;
    m.x = x;
    m.lambda = lambda;
    m.theta = theta;
    m.phi = phi;
    return m;
}

double closed_form_gap(double x, double lambda, double theta) {
    return 2.0 * x * lambda * std::cos(theta) / (1.0 + x * x + lambda * lambda);
}

} // namespace

TEST_CASE("model validation enforces the positivity triangle") {
    CHECK_NOTHROW(validate_model(make_model(0.5, 0.5)));
    CHECK_NOTHROW(validate_model(make_model(0.0, 1.0)));
    CHECK_THROWS_AS(validate_model(make_model(0.6, 0.6)), InvalidModelError);
    CHECK_THROWS_AS(validate_model(make_model(-0.1, 0.5)), InvalidModelError);
    CHECK_THROWS_AS(validate_model(make_model(0.2, 1.1)), InvalidModelError);
    CHECK_THROWS_AS(build_model_operators(make_model(0.7, 0.5)),
                    InvalidModelError);
}

TEST_CASE("coupling unitary is an involution and preserves trace") {
    const ModelOperators ops = build_model_operators(make_model(0.3, 0.4, 1.2, 0.7));
    CHECK((ops.u_sm * ops.u_sm - MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() <
          1e-14);
    CHECK((ops.u_sm * ops.u_sm.adjoint() - MatrixXcd::Identity(8, 8))
              .cwiseAbs().maxCoeff() < 1e-14);

    const MatrixXcd joint = kron(ops.rho_s.matrix(), ops.rho_m.matrix());
    const MatrixXcd evolved = ops.u_sm * joint * ops.u_sm.adjoint();
    CHECK(std::abs(evolved.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("readout effects at reference points") {
    const ModelOperators sharp = build_model_operators(make_model(0.0, 1.0));
    CHECK(max_abs_diff(sharp.e_plus.matrix(), diag2(1.0, 0.0)) < 1e-15);
    CHECK(max_abs_diff(sharp.e_minus.matrix(), diag2(0.0, 1.0)) < 1e-15);

    const ModelOperators half = build_model_operators(make_model(0.5, 0.5));
    CHECK(max_abs_diff(half.e_plus.matrix(), diag2(1.0, 0.5)) < 1e-15);
    CHECK(max_abs_diff(half.e_minus.matrix(), diag2(0.0, 0.5)) < 1e-15);

    // On the boundary x + lambda = 1 one eigenvalue of E- vanishes.
    const VectorXd eigs = hermitian_eigenvalues(half.e_minus.matrix());
    CHECK(std::abs(eigs.minCoeff()) < 1e-12);
}

TEST_CASE("unbiased or fully unsharp readouts leave everything maximally mixed") {
    for (const auto& model : {make_model(0.0, 0.7), make_model(0.4, 0.0)}) {
        const MeasurementOutcome out = simulate_measurement(model);
        CHECK(max_abs_diff(out.rho_s_out.matrix(), 0.5 * Matrix2cd::Identity()) <
              1e-13);
        CHECK(max_abs_diff(out.rho_m_out.matrix(),
                           0.25 * MatrixXcd::Identity(4, 4)) < 1e-13);
    }
    // Unbiased readout of a maximally mixed system is a fair coin.
    CHECK(simulate_measurement(make_model(0.0, 0.7)).p_plus ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("equal bias and sharpness reference point") {
    const MeasurementOutcome out = simulate_measurement(make_model(0.5, 0.5));
    CHECK(max_abs_diff(out.rho_s_out.matrix(), diag2(2.0 / 3.0, 1.0 / 3.0)) <
          1e-13);

    const VectorXd eigs = out.rho_m_out.eigenvalues();
    CHECK(eigs[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(eigs[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(eigs[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(eigs[3] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    CHECK(out.p_plus == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("register spectrum is blind to the measurement angles") {
    const double x = 0.35, lambda = 0.45;
    const VectorXd ref = simulate_measurement(make_model(x, lambda)).rho_m_out
                             .eigenvalues();
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            const double theta = kPi * i / 16.0;
            const double phi = 2.0 * kPi * j / 16.0;
            const VectorXd eigs =
                simulate_measurement(make_model(x, lambda, theta, phi))
                    .rho_m_out.eigenvalues();
            CHECK((eigs - ref).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("entropy change reference values") {
    CHECK(delta_s_m(make_model(0.0, 0.6)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(delta_s_m(make_model(0.3, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
    // Frozen from the brute-force spectrum {1/3, 1/3, 1/6, 1/6}.
    CHECK(delta_s_m(make_model(0.5, 0.5)) ==
          doctest::Approx(0.9182958340544896).epsilon(1e-10));
}

TEST_CASE("entropy change is minimized at equal bias and sharpness") {
    double best = 10.0;
    double best_x = -1.0, best_l = -1.0;
    const int n = 21;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = static_cast<double>(i) / (n - 1);
            const double lambda = static_cast<double>(j) / (n - 1);
            if (x + lambda > 1.0 + 1e-12) continue;
            const double value = delta_s_m(make_model(x, lambda));
            if (value < best) {
                best = value;
                best_x = x;
                best_l = lambda;
            }
        }
    }
    CHECK(best_x == doctest::Approx(0.5));
    CHECK(best_l == doctest::Approx(0.5));
}

TEST_CASE("system energy change reference values") {
    CHECK(delta_e_s(make_model(0.0, 0.8)) == doctest::Approx(0.0).scale(1));
    CHECK(delta_e_s(make_model(0.3, 0.4, kPi / 2)) ==
          doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(delta_e_s(make_model(0.5, 0.5)) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    MeasurementModel scaled = make_model(0.5, 0.5);
    scaled.omega_s = 2.5;
    CHECK(delta_e_s(scaled) == doctest::Approx(2.5 / 3.0).epsilon(1e-12));
}

TEST_CASE("energy report composes the pieces") {
    MeasurementModel model = make_model(0.0, 0.9);
    const EnergyReport unbiased = energy_cost(model);
    CHECK(unbiased.e_cost == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(unbiased.delta_e_s == doctest::Approx(0.0).scale(1));

    const EnergyReport report = energy_cost(make_model(0.5, 0.5));
    CHECK(report.e_cost == doctest::Approx(1.2516291673878228).epsilon(1e-10));
    CHECK(report.delta_e_s + report.delta_s_m ==
          doctest::Approx(report.e_cost).epsilon(1e-14));
    CHECK(report.p_plus + report.p_minus == doctest::Approx(1.0).epsilon(1e-12));
    double sum = 0.0;
    for (double eig : report.memory_eigenvalues) {
        CHECK(eig >= -1e-12);
        CHECK(eig <= 1.0 + 1e-12);
        sum += eig;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    MeasurementModel cold = make_model(0.5, 0.5);
    cold.beta = 4.0;
    const EnergyReport scaled = energy_cost(cold);
    CHECK(scaled.e_cost ==
          doctest::Approx(1.0 / 3.0 + 0.9182958340544896 / 4.0).epsilon(1e-10));

    MeasurementModel bad = make_model(0.2, 0.2);
    bad.beta = 0.0;
    CHECK_THROWS_AS(energy_cost(bad), InvalidModelError);
}

TEST_CASE("total cost peaks at equal bias and sharpness") {
    double best = -10.0;
    double best_x = -1.0, best_l = -1.0;
    const int n = 21;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = static_cast<double>(i) / (n - 1);
            const double lambda = static_cast<double>(j) / (n - 1);
            if (x + lambda > 1.0 + 1e-12) continue;
            const double value = energy_cost(make_model(x, lambda)).e_cost;
            if (value > best) {
                best = value;
                best_x = x;
                best_l = lambda;
            }
        }
    }
    CHECK(best_x == doctest::Approx(0.5));
    CHECK(best_l == doctest::Approx(0.5));
}

TEST_CASE("simulation matches the closed forms on random models") {
    Rng rng(2025);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int i = 0; i < 200; ++i) {
        const double x = unit(rng);
        const double lambda = (1.0 - x) * unit(rng);
        const double theta = 0.5 * angle(rng);
        const MeasurementModel model = make_model(x, lambda, theta, angle(rng));
        const EnergyReport report = energy_cost(model);

        const double gap = closed_form_gap(x, lambda, 0.0);
        CHECK(report.delta_e_s ==
              doctest::Approx(closed_form_gap(x, lambda, theta))
                  .epsilon(1e-10).scale(1));
        CHECK(report.memory_eigenvalues[0] ==
              doctest::Approx(0.25 * (1.0 - gap)).epsilon(1e-10));
        CHECK(report.memory_eigenvalues[3] ==
              doctest::Approx(0.25 * (1.0 + gap)).epsilon(1e-10));
    }
}

TEST_CASE("reports are symmetric under swapping bias and sharpness") {
    Rng rng(2026);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double x = unit(rng);
        const double lambda = (1.0 - x) * unit(rng);
        const double theta = kPi * unit(rng);
        const EnergyReport a = energy_cost(make_model(x, lambda, theta));
        const EnergyReport b = energy_cost(make_model(lambda, x, theta));
        CHECK(a.delta_s_m == doctest::Approx(b.delta_s_m).epsilon(1e-10).scale(1));
        CHECK(a.delta_e_s == doctest::Approx(b.delta_e_s).epsilon(1e-10).scale(1));
        CHECK(a.e_cost == doctest::Approx(b.e_cost).epsilon(1e-10).scale(1));
    }
}

TEST_CASE("records the printed register matrix comparison") {
    // The printed 4x4 register state has off-diagonals R_s/2 at the
    // (0,2) and (1,3) slots; recorded here rather than asserted.
    const double x = 0.3, lambda = 0.4, theta = 1.1, phi = 0.7;
    const MeasurementOutcome out =
        simulate_measurement(make_model(x, lambda, theta, phi));
    const std::complex<double> printed =
        0.5 * x * lambda / (1.0 + x * x + lambda * lambda) *
        std::complex<double>(std::cos(phi), std::sin(phi)) * std::sin(theta);
    const std::complex<double> simulated = out.rho_m_out.matrix()(0, 2);
    MESSAGE("register off-diagonal simulated=", simulated.real(), "+",
            simulated.imag(), "i printed=", printed.real(), "+", printed.imag(),
            "i |dev|=", std::abs(simulated - printed));
    CHECK(std::abs(simulated - out.rho_m_out.matrix()(1, 3)) < 1e-12);
}

TEST_CASE("damped-AD cost trajectory rides the kernel") {
    const auto grid = linear_grid(0.0, 10.0, 101);
    const auto rows = ad_energy_trajectory(5.0, 1.0, 1.0, grid);
    REQUIRE(rows.size() == grid.size());

    CHECK(rows.front().x == doctest::Approx(0.0).scale(1));
    CHECK(rows.front().lambda == doctest::Approx(1.0));
    CHECK(rows.front().e_cost == doctest::Approx(1.0).epsilon(1e-9));

    double min_g = 1.0;
    for (const auto& row : rows) {
        CHECK(row.x + row.lambda == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(row.x >= 0.0);
        CHECK(row.lambda >= 0.0);
        min_g = std::min(min_g, row.g);
    }
    CHECK(min_g < -0.05);  // non-Markovian kernel goes negative

    // Strong damping empties the sharpness; the cost returns to 1/beta.
    const auto late = ad_energy_trajectory(5.0, 2.0, 1.0, {40.0});
    CHECK(late[0].x == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(late[0].e_cost == doctest::Approx(0.5).epsilon(1e-6));
}
