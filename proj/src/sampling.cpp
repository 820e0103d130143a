#include "qpovm/sampling.hpp"

#include <cmath>
#include <numbers>

namespace qpovm {

BlochVector random_bloch_vector(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector3d dir(gauss(rng), gauss(rng), gauss(rng));
    const double n = dir.norm();
    if (n < 1e-12) return BlochVector{};
    const double radius = std::cbrt(unit(rng));
    return BlochVector{radius * dir / n};
}

DensityMatrix random_density(Rng& rng) {
    return bloch_to_density(random_bloch_vector(rng));
}

Matrix2cd random_unitary2(Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector4d v(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    v.normalize();
    const std::complex<double> a(v[0], v[1]), b(v[2], v[3]);
    Matrix2cd u;
    u << a, -std::conj(b), b, std::conj(a);
    return u;
}

Matrix2cd random_hermitian2(Rng& rng) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    Matrix2cd h = coeff(rng) * identity2();
    for (int j = 1; j <= 3; ++j) h += coeff(rng) * pauli(j);
    return h;
}

KrausChannel random_unitary_mixture(Rng& rng, int num_unitaries) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> weights(static_cast<std::size_t>(num_unitaries));
    double total = 0.0;
    for (auto& w : weights) {
        w = unit(rng) + 1e-6;
        total += w;
    }
    std::vector<Matrix2cd> ops;
    ops.reserve(weights.size());
    for (const double w : weights)
        ops.push_back(std::sqrt(w / total) * random_unitary2(rng));
    return KrausChannel(std::move(ops), "random unitary mixture");
}

ChannelFamily random_catalog_family(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 5);
    switch (pick(rng)) {
        case 0:
            return catalog(ChannelKind::rtn,
                           {{"a", 2.0 * unit(rng)}, {"gamma_rate", 0.2 + unit(rng)}});
        case 1:
            return catalog(ChannelKind::pd, {{"lambda", unit(rng)}});
        case 2:
            return catalog(ChannelKind::depolarizing, {{"q", unit(rng)}});
        case 3:
            return catalog(ChannelKind::ad, {{"gamma", unit(rng)}});
        case 4:
            return catalog(ChannelKind::ad_memory, {{"R", 6.0 * unit(rng)}});
        default:
            return catalog(ChannelKind::gad,
                           {{"p", unit(rng)}, {"gamma", unit(rng)}});
    }
}

} // namespace qpovm
