#ifndef NESTALG_RANDOM_HPP_
#define NESTALG_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "nestalg/linalg.hpp"

namespace nestalg {

// All randomness in the library flows through this engine type, seeded
// explicitly by the caller.
using Rng = std::mt19937_64;

Complex random_gaussian_complex(Rng& rng);
std::vector<Complex> random_unit_vector(Index n, Rng& rng);
// Entries are independent standard complex Gaussians.
ComplexMatrix random_gaussian_matrix(Index rows, Index cols, Rng& rng);
// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
ComplexMatrix random_unitary(Index n, Rng& rng);
// Uniform point in the closed disc of the given radius.
Complex random_in_disc(double radius, Rng& rng);

}  // namespace nestalg

#endif  // NESTALG_RANDOM_HPP_
