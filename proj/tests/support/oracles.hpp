#ifndef NESTALG_TESTS_ORACLES_HPP_
#define NESTALG_TESTS_ORACLES_HPP_

// Reference implementations that share no code path with the library.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nestalg/index_maps.hpp"
#include "nestalg/linalg.hpp"
#include "nestalg/ordinal.hpp"

namespace oracle {

using nestalg::Complex;
using nestalg::ComplexMatrix;
using nestalg::Index;

// One-sided (Hestenes) Jacobi SVD on the columns of a copy of `a`; values
// sorted non-increasing.
std::vector<double> jacobi_singular_values(const ComplexMatrix& a);
double jacobi_trace_norm(const ComplexMatrix& a);

// sigma_k(triu(ones_N)) = 1 / (2 sin((2k - 1) pi / (4N + 2))).
std::vector<double> triu_ones_singular_values(Index n);
double triu_ones_growth(Index n);

// Indices with ||column|| > eps, by direct summation.
std::vector<Index> large_columns(const ComplexMatrix& t, double epsilon);

// Largest set of indices whose pairs are all bad (|x_ij| >= delta, i < j),
// by exhaustive branch and bound over the indices that touch a bad pair.
std::vector<Index> largest_bad_clique(const ComplexMatrix& x, double delta);

// Ordinals as descending lists of exponents with repetition:
// w^e_1 + w^e_2 + ...  (coefficients spelled out in unary).
struct UnaryOrdinal {
  std::vector<UnaryOrdinal> exponents;
};
UnaryOrdinal to_unary(const nestalg::Ordinal& a);
int compare(const UnaryOrdinal& a, const UnaryOrdinal& b);
UnaryOrdinal add(const UnaryOrdinal& a, const UnaryOrdinal& b);
UnaryOrdinal multiply(const UnaryOrdinal& a, const UnaryOrdinal& b);
bool equal(const UnaryOrdinal& a, const UnaryOrdinal& b);

// Random CNF ordinal of height <= height with small coefficients.
nestalg::Ordinal random_ordinal(std::mt19937_64& rng, int height);

// Uniformly random strictly increasing n-subset of 1..N.
nestalg::IndexMap random_index_map(std::mt19937_64& rng, Index n, Index N);

}  // namespace oracle

#endif  // NESTALG_TESTS_ORACLES_HPP_
