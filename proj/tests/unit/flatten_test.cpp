#include <gtest/gtest.h>

#include <cmath>

#include "nestalg/errors.hpp"
#include "nestalg/flatten.hpp"
#include "nestalg/random.hpp"
#include "oracles.hpp"

namespace nestalg {
namespace {

ComplexMatrix normalized(ComplexMatrix x) {
  x *= Complex(1.0 / trace_norm(x));
  return x;
}

ComplexMatrix random_upper(Rng& rng, Index n, int spikes, double noise) {
  ComplexMatrix x(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) x(i, j) = noise * random_gaussian_complex(rng);
  }
  for (int s = 0; s < spikes; ++s) {
    Index i = rng() % n, j = rng() % n;
    if (i > j) std::swap(i, j);
    x(i, j) += random_gaussian_complex(rng);
  }
  return normalized(x);
}

TEST(FlattenBlock, SingleEntry) {
  const FlattenBlockReport r = flatten_block(ComplexMatrix::unit(5, 1, 2), 3, 0.1);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.rho, IndexMap({3, 4, 5}));
  EXPECT_EQ(r.bad_pairs, 1u);
}

TEST(FlattenBlock, SmallEntriesKeepPrefix) {
  const ComplexMatrix x = normalized(ComplexMatrix::identity(10));
  const FlattenBlockReport r = flatten_block(x, 4, 0.2);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.rho, IndexMap::identity(4));
}

TEST(FlattenBlock, ReportsThresholdAndFailure) {
  // Every pair bad: a normalised all-ones upper triangle with a huge delta
  // budget is impossible, so use a dense bad pattern instead.
  ComplexMatrix x(4, 4);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = i; j < 4; ++j) x(i, j) = 1.0;
  }
  x = normalized(x);
  const FlattenBlockReport r = flatten_block(x, 3, 0.05);
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.failure.empty());
  EXPECT_EQ(r.feasibility_threshold, 3u + 2u * 400u);
  EXPECT_NEAR(r.clique_bound, 1.0 + 400.0, 1e-9);
  EXPECT_EQ(r.good_set.size(), 1u);
}

TEST(FlattenBlock, RejectsBadInput) {
  EXPECT_THROW(flatten_block(ComplexMatrix::ones(3, 3), 2, 0.1), InputError);
  EXPECT_THROW(flatten_block(ComplexMatrix::unit(3, 1, 2) * Complex(2.0), 2, 0.1), InputError);
  EXPECT_THROW(flatten_block(ComplexMatrix::unit(3, 1, 2), 2, 0.0), InputError);
  EXPECT_THROW(flatten_block(ComplexMatrix(2, 3), 1, 0.1), InputError);
}

TEST(FlattenBlock, RandomBlocksPassEntrywiseCheck) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix x = random_upper(rng, 64, 20, 0.02);
    const double delta = 0.2;
    const FlattenBlockReport r = flatten_block(x, 5, delta);
    ASSERT_TRUE(r.success) << r.failure;
    for (Index a = 1; a <= 5; ++a) {
      for (Index b = a + 1; b <= 5; ++b) {
        EXPECT_LT(std::abs(x(r.rho(a) - 1, r.rho(b) - 1)), delta);
      }
    }
    EXPECT_LE(r.bad_pairs, static_cast<Index>(1.0 / (delta * delta)));
    EXPECT_LE(static_cast<double>(oracle::largest_bad_clique(x, delta).size()),
              r.clique_bound);
  }
}

TEST(FlattenBlock, BadPairListing) {
  ComplexMatrix x = ComplexMatrix::unit(4, 1, 3) * Complex(0.5) +
                    ComplexMatrix::unit(4, 2, 4) * Complex(0.5);
  x = normalized(x);
  const auto pairs = bad_pairs(x, 0.3);
  EXPECT_EQ(pairs, (std::vector<std::pair<Index, Index>>{{1, 3}, {2, 4}}));
  const auto good = good_indices(x, 0.3);
  EXPECT_EQ(good.size(), 2u);
}

TEST(FlattenSubspace, SingleNetElement) {
  const FlattenSubspaceReport r = flatten_subspace({ComplexMatrix::unit(6, 1, 2)}, 2, 0.5);
  ASSERT_TRUE(r.success) << r.failure;
  EXPECT_DOUBLE_EQ(r.delta, 0.5 / 4.0);
  const bool has1 = r.sigma.values()[0] == 1 || r.psi.values()[0] == 1;
  const bool has2 = r.sigma.values()[0] == 2 || r.psi.values()[0] == 2;
  EXPECT_FALSE(has1 && has2);
  EXPECT_LE(r.compressed_norms[0], 0.5);
  EXPECT_TRUE(is_interleaved(r.sigma, r.psi, InterleaveMode::kStrict));
}

TEST(FlattenSubspace, DisjointSupports) {
  std::vector<ComplexMatrix> net;
  for (Index t = 0; t < 5; ++t) net.push_back(ComplexMatrix::unit(40, 2 * t + 1, 2 * t + 2));
  const FlattenSubspaceReport r = flatten_subspace(net, 3, 0.9);
  ASSERT_TRUE(r.success) << r.failure;
  std::vector<Index> all = r.sigma.values();
  all.insert(all.end(), r.psi.values().begin(), r.psi.values().end());
  for (Index t = 0; t < 5; ++t) {
    const bool a = std::find(all.begin(), all.end(), 2 * t + 1) != all.end();
    const bool b = std::find(all.begin(), all.end(), 2 * t + 2) != all.end();
    EXPECT_FALSE(a && b);
  }
  for (double v : r.compressed_norms) EXPECT_LE(v, 0.9);
}

TEST(FlattenSubspace, RandomNet) {
  Rng rng(17);
  std::vector<ComplexMatrix> net;
  for (int t = 0; t < 3; ++t) net.push_back(random_upper(rng, 128, 12, 0.01));
  const double eps = 0.5;
  const FlattenSubspaceReport r = flatten_subspace(net, 4, eps);
  ASSERT_TRUE(r.success) << r.failure;
  EXPECT_EQ(r.stages.size(), 3u);
  EXPECT_TRUE(is_interleaved(r.sigma, r.psi, InterleaveMode::kStrict));
  for (std::size_t t = 0; t < net.size(); ++t) {
    const double direct = oracle::jacobi_trace_norm(apply_K(r.sigma, r.psi, net[t]));
    EXPECT_NEAR(direct, r.compressed_norms[t], 1e-9);
    EXPECT_LE(direct, eps);
  }
}

TEST(FlattenSubspace, IdentifiesFailingStage) {
  // A dense unit-norm block cannot be flattened inside four indices.
  ComplexMatrix x(4, 4);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = i; j < 4; ++j) x(i, j) = 1.0;
  }
  const FlattenSubspaceReport r =
      flatten_subspace({ComplexMatrix::unit(4, 3, 4), normalized(x)}, 2, 0.2);
  EXPECT_FALSE(r.success);
  EXPECT_GE(r.failed_stage, 1u);
  EXPECT_FALSE(r.failure.empty());
}

}  // namespace
}  // namespace nestalg
