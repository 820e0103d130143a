#include "qpovm/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpovm/energy.hpp"
#include "qpovm/markov.hpp"
#include "qpovm/povm.hpp"
#include "qpovm/sampling.hpp"

namespace qpovm {

namespace {

constexpr double kPi = std::numbers::pi;

SelftestResult finish(std::string name, double max_dev, double tolerance) {
    return {std::move(name), max_dev <= tolerance, max_dev, tolerance};
}

SelftestResult duality(Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ChannelFamily family = random_catalog_family(rng);
        const KrausChannel ch = family.channel_at(0.7);
        const DensityMatrix rho = random_density(rng);
        const Matrix2cd a = random_hermitian2(rng);
        const double lhs = (apply(ch, rho).matrix() * a).trace().real();
        const double rhs = (rho.matrix() * apply_conjugate(ch, a)).trace().real();
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return finish("heisenberg duality Tr(E[rho] A) = Tr(rho E^dag[A])", worst,
                  1e-12);
}

SelftestResult mueller_consistency(Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ChannelFamily family = random_catalog_family(rng);
        const KrausChannel ch = family.channel_at(1.3);
        const MuellerMatrix m = mueller_matrix(ch);
        const DensityMatrix rho = random_density(rng);
        const Vector3d direct = density_to_bloch(apply(ch, rho)).r;
        const Vector3d affine = m.apply_to_bloch(density_to_bloch(rho).r);
        worst = std::max(worst, (direct - affine).cwiseAbs().maxCoeff());
    }
    return finish("Mueller matrix matches Kraus action on Bloch vectors", worst,
                  1e-12);
}

SelftestResult povm_completeness(Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ChannelFamily family = random_catalog_family(rng);
        const auto [e_plus, e_minus] =
            heisenberg_effects(family.channel_at(0.4), 0.5 * angle(rng), angle(rng));
        const Matrix2cd sum = e_plus.matrix() + e_minus.matrix();
        worst = std::max(worst, (sum - identity2()).cwiseAbs().maxCoeff());
        const BiasSharpness bs = extract_bias_sharpness(e_plus);
        worst = std::max(worst, std::abs(bs.x) + bs.sharpness - 1.0);
    }
    return finish("evolved effects sum to identity and satisfy |x|+|m| <= 1",
                  worst, 1e-10);
}

SelftestResult unital_unbiased(Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::uniform_int_distribution<int> count(2, 4);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const KrausChannel ch = random_unitary_mixture(rng, count(rng));
        const auto [e_plus, e_minus] =
            heisenberg_effects(ch, 0.5 * angle(rng), angle(rng));
        (void)e_minus;
        worst = std::max(worst, std::abs(extract_bias_sharpness(e_plus).x));
    }
    return finish("random unitary mixtures generate unbiased POVMs", worst,
                  1e-10);
}

SelftestResult energy_closed_forms(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        MeasurementModel model;
        model.x = unit(rng);
        model.lambda = (1.0 - model.x) * unit(rng);
        model.theta = 0.5 * angle(rng);
        model.phi = angle(rng);
        const EnergyReport report = energy_cost(model);
        const double gap = 2.0 * model.x * model.lambda /
                           (1.0 + model.x * model.x + model.lambda * model.lambda);
        worst = std::max(worst,
                         std::abs(report.delta_e_s - gap * std::cos(model.theta)));
        worst = std::max(worst,
                         std::abs(report.memory_eigenvalues[0] - 0.25 * (1.0 - gap)));
        worst = std::max(worst,
                         std::abs(report.memory_eigenvalues[3] - 0.25 * (1.0 + gap)));
    }
    return finish("simulated energy cost matches closed forms", worst, 1e-10);
}

} // namespace

std::vector<SelftestResult> run_selftests(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<SelftestResult> results;
    results.push_back(duality(rng));
    results.push_back(mueller_consistency(rng));
    results.push_back(povm_completeness(rng));
    results.push_back(unital_unbiased(rng));
    results.push_back(energy_closed_forms(rng));
    return results;
}

} // namespace qpovm
