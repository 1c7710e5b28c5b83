#ifndef NESTALG_EXTRACTION_HPP_
#define NESTALG_EXTRACTION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nestalg/index_maps.hpp"
#include "nestalg/linalg.hpp"
#include "nestalg/matrix_map.hpp"

namespace nestalg {

// Columns of a T: l2^N -> l2^n (given as an n x N matrix) with norm > eps,
// together with both sides of the counting bound
//   card{i : ||T e_i|| > eps} <= slack * n^3 ||T||^2 / eps^2.
struct LargeColumnReport {
  std::vector<Index> columns;  // 1-based, ascending
  double bound = 0.0;
  double operator_norm = 0.0;
  bool bound_holds = true;
};

// `slack` multiplies the bound; it stands for the Banach-Mazur distance of
// the target to l2 and is 1 for Euclidean targets.
LargeColumnReport count_large_columns(const ComplexMatrix& t, double epsilon,
                                      double slack = 1.0);

struct ExtractionBudget {
  double K = 1.0;               // bound on the map norm
  Index minimum_N = 0;          // 0 means 2n (strict) or n (weak)
  Index max_survivors = 48;     // window and cap of the survivor set
  double net_side = 0.0;        // 0 means epsilon / 4
  int max_candidates = 3;       // histogram cells tried as lambda candidates
  int restarts = 8;             // residual estimator restarts
  std::uint64_t seed = 0;       // residual estimator seed
};

struct ExtractionResult {
  bool success = false;
  IndexMap sigma;
  IndexMap psi;
  Complex lambda = 0.0;
  double residual = 0.0;        // estimate of ||K Phi J - lambda I||
  double residual_upper = 0.0;  // certified upper bound of the same norm
  InterleaveMode mode = InterleaveMode::kStrict;
  double epsilon = 0.0;
  double tolerance = 0.0;       // diagonal homogeneity radius of the attempt
  double delta = 0.0;           // off-diagonal threshold of the attempt
  Index survivors = 0;          // survivor count after suppression
  int attempts = 0;
  std::string failure;          // empty on success
  ExtractionBudget budget;
};

// K_{sigma,psi} Phi J_{sigma,psi} as a dense map on n x n matrices, built
// from image entries only.
DenseMatrixMap compress_map(const MatrixMap& phi, const IndexMap& sigma,
                            const IndexMap& psi);

// Searches for interleaved (sigma, psi) and lambda with
// ||K Phi J - lambda I_n|| <= epsilon. Never reports success without the
// residual check; on failure the best certificate found is returned with
// `success == false`.
ExtractionResult find_scalar_compression(const MatrixMap& phi, Index n,
                                         double epsilon, InterleaveMode mode,
                                         const ExtractionBudget& budget = {});

// Recomputes the residual of a certificate against `phi`.
double certificate_residual(const MatrixMap& phi, const ExtractionResult& r,
                            int restarts, std::uint64_t seed);

// One of K Phi J and I - K Phi J is close to a scalar of modulus >= 1/2;
// this selects it and inverts it.
struct DichotomyReport {
  bool uses_complement = false;     // true: I - K Phi J was selected
  Complex scalar = 0.0;             // lambda or 1 - lambda
  double min_diagonal_modulus = 0.0;
  double inverse_norm_estimate = 0.0;
  double inverse_norm_bound = 0.0;  // 1/(|scalar| - residual_upper), or inf
  double inverse_error = 0.0;       // max |(A A^{-1} - I)| over the basis
  bool invertible = false;
};

DichotomyReport select_invertible(const MatrixMap& phi,
                                  const ExtractionResult& result, int restarts,
                                  std::uint64_t seed);

// JSON record: sigma, psi, lambda, residual, mode, seed, budget.
std::string certificate_json(const ExtractionResult& r);

}  // namespace nestalg

#endif  // NESTALG_EXTRACTION_HPP_
