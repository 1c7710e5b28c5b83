#include "nestalg/ordinal_nests.hpp"

#include <algorithm>
#include <cstdint>

#include "nestalg/errors.hpp"

namespace nestalg {

namespace {

void check_size(std::size_t size) {
  if (size > kMaxOrdinalSample) {
    throw InputError("ordinal sample exceeds " + std::to_string(kMaxOrdinalSample) +
                     " points; lower the depth");
  }
}

Ordinal predecessor(const Ordinal& g) {
  auto terms = g.terms();
  if (--terms.back().coefficient == 0) terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

// Appends the sample of (offset, offset + w^g].
void sample_block(const Ordinal& offset, const Ordinal& g, Index depth,
                  std::vector<Ordinal>& out) {
  if (g.is_zero()) {
    out.push_back(ord_add(offset, Ordinal(1)));
    check_size(out.size());
    return;
  }
  if (g.is_successor()) {
    const Ordinal d = predecessor(g);
    const Ordinal step = Ordinal::omega_power(d);
    for (Index n = 0; n < depth; ++n) {
      sample_block(ord_add(offset, ord_mul(step, Ordinal(n))), d, depth, out);
    }
    return;
  }
  // w^g[n-1] + w^g[n] = w^g[n], so the pieces tile (offset, offset + w^g[depth-1]].
  Ordinal start = offset;
  for (Index n = 0; n < depth; ++n) {
    const Ordinal gn = fundamental_sequence(g, n);
    sample_block(start, gn, depth, out);
    start = ord_add(offset, Ordinal::omega_power(gn));
  }
}

NestMask mask_from_points(const std::vector<Ordinal>& points) {
  const Index m = points.size();
  NestMask mask(m);
  for (Index i = 1; i <= m; ++i) {
    for (Index j = 1; j <= m; ++j) mask.set(i, j, points[i - 1] <= points[j - 1]);
  }
  return mask;
}

}  // namespace

Ordinal fundamental_sequence(const Ordinal& g, Index n) {
  if (!g.is_limit()) {
    throw InputError(to_string(g) + " is not a limit ordinal");
  }
  auto terms = g.terms();
  const OrdinalTerm last{terms.back().exponent, 1};
  if (--terms.back().coefficient == 0) terms.pop_back();
  const Ordinal head = Ordinal::from_terms(std::move(terms));
  const Ordinal& e = last.exponent;
  if (e.is_successor()) {
    // w^(d+1)[n] = w^d * (n + 1)
    return ord_add(head, Ordinal::omega_power(predecessor(e), n + 1));
  }
  return ord_add(head, Ordinal::omega_power(fundamental_sequence(e, n)));
}

std::vector<Ordinal> ordinal_sample(const Ordinal& alpha, Index depth) {
  if (depth == 0) throw InputError("depth must be at least 1");
  std::vector<Ordinal> out;
  Ordinal offset;
  for (const auto& term : alpha.terms()) {
    const Ordinal step = Ordinal::omega_power(term.exponent);
    for (std::uint64_t c = 0; c < term.coefficient; ++c) {
      sample_block(offset, term.exponent, depth, out);
      offset = ord_add(offset, step);
    }
  }
  return out;
}

NestMask nest_mask_for_ordinal(const Ordinal& alpha, Index depth) {
  return mask_from_points(ordinal_sample(alpha, depth));
}

Lemma15Report mask_decompose_lemma15(const Ordinal& alpha, Index depth) {
  if (alpha < Ordinal::omega()) {
    throw InputError("the interval decomposition needs alpha >= w; got " +
                     to_string(alpha));
  }
  if (depth < 2) {
    throw InputError("depth " + std::to_string(depth) +
                     " gives a single interval; at least two are needed");
  }
  Lemma15Report r;
  r.alpha = alpha;
  r.product = ord_mul(alpha, Ordinal::omega());
  r.depth = depth;
  const std::vector<Ordinal> base = ordinal_sample(alpha, depth);
  r.block_size = base.size();
  r.block_mask = mask_from_points(base);
  check_size(base.size() * depth);

  r.intervals_ok = true;
  for (Index n = 0; n < depth; ++n) {
    const Ordinal lo = ord_mul(alpha, Ordinal(n));
    const Ordinal hi = ord_mul(alpha, Ordinal(n + 1));
    std::vector<Index> block;
    for (const Ordinal& p : base) {
      Ordinal q = ord_add(lo, p);
      r.intervals_ok = r.intervals_ok && lo < q && q <= hi && q < r.product;
      r.points.push_back(std::move(q));
      block.push_back(r.points.size());
    }
    r.blocks.push_back(std::move(block));
  }
  r.mask = mask_from_points(r.points);
  const Index dim = r.mask.dim();

  std::vector<int> hits(dim + 1, 0);
  std::vector<Index> owner(dim + 1, 0);
  for (Index n = 0; n < depth; ++n) {
    for (Index g : r.blocks[n]) {
      if (g >= 1 && g <= dim) {
        ++hits[g];
        owner[g] = n;
      }
    }
  }
  r.bijective = std::all_of(hits.begin() + 1, hits.end(), [](int h) { return h == 1; });

  r.diagonal_blocks_equal = true;
  r.support_preserving = true;
  for (const auto& block : r.blocks) {
    NestMask restricted(r.block_size);
    for (Index i = 1; i <= r.block_size; ++i) {
      for (Index j = 1; j <= r.block_size; ++j) {
        const bool global = r.mask.allowed(block[i - 1], block[j - 1]);
        restricted.set(i, j, global);
        if (global != r.block_mask.allowed(i, j)) r.support_preserving = false;
      }
    }
    if (!(restricted == r.block_mask)) r.diagonal_blocks_equal = false;
  }

  r.residual_full_upper = true;
  r.residual_zero_below = true;
  for (Index i = 1; i <= dim; ++i) {
    for (Index j = 1; j <= dim; ++j) {
      if (owner[i] < owner[j] && !r.mask.allowed(i, j)) r.residual_full_upper = false;
      if (owner[i] > owner[j] && r.mask.allowed(i, j)) r.residual_zero_below = false;
    }
  }
  r.verified = r.intervals_ok && r.bijective && r.diagonal_blocks_equal &&
               r.support_preserving && r.residual_full_upper && r.residual_zero_below;
  return r;
}

}  // namespace nestalg
