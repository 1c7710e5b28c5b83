#ifndef NESTALG_FLATTEN_HPP_
#define NESTALG_FLATTEN_HPP_

#include <string>
#include <vector>

#include "nestalg/index_maps.hpp"
#include "nestalg/linalg.hpp"

namespace nestalg {

// A pair {i < j} is bad for x when |x_ij| >= delta.
//
// Greedy elimination drops every index touching a bad pair. Since
// sum |x_ij|^2 <= ||x||_2^2 <= ||x||_1^2 = 1, there are at most
// floor(1/delta^2) bad pairs, so at least N - 2 floor(1/delta^2) indices
// survive: elimination succeeds whenever N >= n + 2 floor(1/delta^2).
struct FlattenBlockReport {
  bool success = false;
  IndexMap rho;                  // first n good indices on success
  std::vector<Index> good_set;   // largest good set found
  Index bad_pairs = 0;
  Index feasibility_threshold = 0;  // n + 2 floor(1/delta^2)
  double clique_bound = 0.0;        // 1 + 1/delta^2, bound on bad cliques
  std::string failure;
};

// Precondition: x square, upper triangular, ||x||_1 = 1 (to 1e-9), delta > 0.
FlattenBlockReport flatten_block(const ComplexMatrix& x, Index n, double delta);

// Good indices of x without normalisation checks; the elimination set, or a
// smallest-index maximal independent set of the bad graph when that is
// larger.
std::vector<Index> good_indices(const ComplexMatrix& x, double delta);
std::vector<std::pair<Index, Index>> bad_pairs(const ComplexMatrix& x,
                                               double delta);

struct FlattenStage {
  Index stage = 0;        // 1-based net position
  Index survivors = 0;    // size of the composite index set after the stage
  Index bad_pairs = 0;
};

// Composite block compression q = K_{sigma,psi} flattening every net element:
// ||q x_t||_1 <= epsilon. sigma and psi are the odd/even positions of the
// first 2n surviving indices, so they interleave strictly and q preserves
// upper triangularity; delta = epsilon / n^2.
struct FlattenSubspaceReport {
  bool success = false;
  IndexMap sigma;
  IndexMap psi;
  double delta = 0.0;
  std::vector<FlattenStage> stages;
  std::vector<double> compressed_norms;  // ||q x_t||_1 per net element
  Index failed_stage = 0;                // 0 when every stage succeeded
  std::string failure;
};

FlattenSubspaceReport flatten_subspace(const std::vector<ComplexMatrix>& net,
                                       Index n, double epsilon);

}  // namespace nestalg

#endif  // NESTALG_FLATTEN_HPP_
