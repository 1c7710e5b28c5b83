#include "nestalg/generators.hpp"

#include "nestalg/errors.hpp"
#include "nestalg/random.hpp"

namespace nestalg {

SchurMultiplierMap planted_multiplier(Index dim, Complex lambda,
                                      double perturbation, std::uint64_t seed) {
  if (dim == 0) throw InputError("dimension must be positive");
  if (!(perturbation >= 0.0)) throw InputError("perturbation must be >= 0");
  Rng rng(seed);
  ComplexMatrix c(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      c(i, j) = lambda + random_in_disc(perturbation, rng);
    }
  }
  return SchurMultiplierMap(std::move(c));
}

TwoSidedMap random_contraction(Index dim, std::uint64_t seed) {
  if (dim == 0) throw InputError("dimension must be positive");
  Rng rng(seed);
  ComplexMatrix a = random_gaussian_matrix(dim, dim, rng);
  ComplexMatrix b = random_gaussian_matrix(dim, dim, rng);
  a *= Complex(1.0 / operator_norm(a));
  b *= Complex(1.0 / operator_norm(b));
  return TwoSidedMap(std::move(a), std::move(b));
}

}  // namespace nestalg
