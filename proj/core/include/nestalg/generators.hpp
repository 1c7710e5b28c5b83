#ifndef NESTALG_GENERATORS_HPP_
#define NESTALG_GENERATORS_HPP_

#include <cstdint>

#include "nestalg/linalg.hpp"
#include "nestalg/matrix_map.hpp"

namespace nestalg {

// Schur multiplier with coefficients lambda + d_ij, |d_ij| <= perturbation,
// d_ij uniform in the disc.
SchurMultiplierMap planted_multiplier(Index dim, Complex lambda,
                                      double perturbation, std::uint64_t seed);

// X -> A X B / (||A||_inf ||B||_inf) with Gaussian A, B; the map has c_1
// norm exactly 1.
TwoSidedMap random_contraction(Index dim, std::uint64_t seed);

}  // namespace nestalg

#endif  // NESTALG_GENERATORS_HPP_
