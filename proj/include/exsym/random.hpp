#pragma once

#include <cstdint>
#include <random>

#include "exsym/linalg.hpp"

namespace exsym {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream for index `stream` under a master seed. Every parallel
/// kernel draws sample i from make_stream(seed, i), so results do not depend
/// on the thread count.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Complex Gaussian with independent N(0, 1/2) real and imaginary parts.
Complex complex_normal(Rng& rng);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) folded back into Q.
template <int N>
Matrix<N> haar_unitary(Rng& rng);

/// Hermitian matrix with complex Gaussian off-diagonals and real Gaussian
/// diagonal (GUE up to scale).
template <int N>
Matrix<N> random_hermitian(Rng& rng, double scale = 1.0);

/// Full-rank mixed state G G^dagger / tr(G G^dagger), G complex Ginibre.
DensityMatrix random_density(Rng& rng);
Vector4 random_state_vector(Rng& rng);

}  // namespace exsym
