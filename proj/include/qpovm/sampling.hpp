#pragma once

#include <random>
#include <vector>

#include "qpovm/channels.hpp"
#include "qpovm/states.hpp"

namespace qpovm {

using Rng = std::mt19937_64;

/// Uniform point in the closed Bloch ball.
BlochVector random_bloch_vector(Rng& rng);

DensityMatrix random_density(Rng& rng);

/// Haar-random SU(2) element (uniform on the 3-sphere).
Matrix2cd random_unitary2(Rng& rng);

/// Random 2x2 Hermitian with entries of order one.
Matrix2cd random_hermitian2(Rng& rng);

/// Unital channel: convex mixture of `num_unitaries` Haar-random
/// unitaries with random weights.
KrausChannel random_unitary_mixture(Rng& rng, int num_unitaries);

/// Random catalog family with in-range parameters.
ChannelFamily random_catalog_family(Rng& rng);

} // namespace qpovm
