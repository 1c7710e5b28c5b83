#ifndef NESTALG_ORDINAL_NESTS_HPP_
#define NESTALG_ORDINAL_NESTS_HPP_

#include <string>
#include <vector>

#include "nestalg/decomposition.hpp"
#include "nestalg/ordinal.hpp"

namespace nestalg {

// Hard cap on the number of sampled ordinals.
inline constexpr Index kMaxOrdinalSample = 4096;

// Increasing finite sample of the interval (0, alpha]: each CNF term
// w^g * c contributes c consecutive blocks; a block of length w^(d+1) is
// split into `depth` copies of w^d, a block of length w^g with g a limit
// into `depth` pieces along the fundamental sequence of g, and a block of
// length 1 is a single point.
std::vector<Ordinal> ordinal_sample(const Ordinal& alpha, Index depth);

// allowed(i, j) <=> sample[i] <= sample[j] for the sample above.
NestMask nest_mask_for_ordinal(const Ordinal& alpha, Index depth);

// g[n] of the standard fundamental sequence of a limit ordinal g.
Ordinal fundamental_sequence(const Ordinal& g, Index n);

struct Lemma15Report {
  Ordinal alpha;
  Ordinal product;         // alpha * w
  Index depth = 0;         // number of intervals I_n sampled
  Index block_size = 0;    // points per interval
  NestMask block_mask;     // nest_mask_for_ordinal(alpha, depth)
  NestMask mask;           // mask of the alpha * w sample
  std::vector<Ordinal> points;
  // blocks[n][i - 1] = global index (1-based) of local point i in I_n.
  std::vector<std::vector<Index>> blocks;

  bool intervals_ok = false;        // every point of block n lies in I_n
  bool bijective = false;           // blocks partition 1..dim
  bool diagonal_blocks_equal = false;
  bool support_preserving = false;  // relabelling carries allowed to allowed
  bool residual_full_upper = false;
  bool residual_zero_below = false;
  bool verified = false;
};

// Finite check of (0, alpha*w] = U_n I_n with I_n = (alpha*n, alpha*(n+1)].
// Needs alpha >= w and depth >= 2.
Lemma15Report mask_decompose_lemma15(const Ordinal& alpha, Index depth);

}  // namespace nestalg

#endif  // NESTALG_ORDINAL_NESTS_HPP_
