#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "nestalg/decomposition.hpp"
#include "nestalg/errors.hpp"
#include "nestalg/linalg.hpp"
#include "nestalg/matrix_io.hpp"
#include "nestalg/matrix_map.hpp"
#include "nestalg/random.hpp"
#include "oracles.hpp"

namespace nestalg {
namespace {

TEST(SingularValues, DiagonalMatrix) {
  const ComplexMatrix d{{3.0, 0.0}, {0.0, 4.0}};
  const auto s = singular_values(d).values;
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0], 4.0, 1e-12);
  EXPECT_NEAR(s[1], 3.0, 1e-12);
  EXPECT_NEAR(schatten_norm(d, 1.0), 7.0, 1e-12);
  EXPECT_NEAR(schatten_norm(d, 2.0), 5.0, 1e-12);
  EXPECT_NEAR(schatten_norm(d, kInfinity), 4.0, 1e-12);
}

TEST(SingularValues, RankOneOnes) {
  const auto s = singular_values(ComplexMatrix::ones(2, 2)).values;
  EXPECT_NEAR(s[0], 2.0, 1e-12);
  EXPECT_NEAR(s[1], 0.0, 1e-12);
  EXPECT_NEAR(trace_norm(ComplexMatrix::ones(2, 2)), 2.0, 1e-12);
}

TEST(SingularValues, UnitUpperTriangular) {
  // A^H A = [[1,1],[1,2]] has eigenvalues (3 +- sqrt5)/2.
  const auto s = singular_values(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}).values;
  EXPECT_NEAR(s[0], (std::sqrt(5.0) + 1.0) / 2.0, 1e-12);
  EXPECT_NEAR(s[1], (std::sqrt(5.0) - 1.0) / 2.0, 1e-12);
}

TEST(SingularValues, RectangularLengthAndOrder) {
  Rng rng(3);
  const ComplexMatrix a = random_gaussian_matrix(3, 7, rng);
  const auto s = singular_values(a).values;
  ASSERT_EQ(s.size(), 3u);
  EXPECT_TRUE(std::is_sorted(s.rbegin(), s.rend()));
}

TEST(SingularValues, AgreesWithJacobiOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Index rows = 1 + trial % 9;
    const Index cols = 1 + (trial * 5) % 11;
    const ComplexMatrix a = random_gaussian_matrix(rows, cols, rng);
    const auto lib = singular_values(a).values;
    const auto ref = oracle::jacobi_singular_values(a);
    ASSERT_EQ(lib.size(), ref.size());
    for (std::size_t k = 0; k < lib.size(); ++k) {
      EXPECT_NEAR(lib[k], ref[k], 1e-10 * lib[0]);
    }
  }
}

TEST(SingularValues, TriangularOnesClosedForm) {
  for (Index n : {1u, 2u, 5u, 16u, 40u}) {
    const auto lib = singular_values(triangular_projection(ComplexMatrix::ones(n, n))).values;
    const auto ref = oracle::triu_ones_singular_values(n);
    for (Index k = 0; k < n; ++k) EXPECT_NEAR(lib[k], ref[k], 1e-10 * ref[0]);
  }
}

TEST(SingularValues, RejectsNonFinite) {
  std::vector<Complex> entries{1.0, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(ComplexMatrix(1, 2, entries), InputError);
  EXPECT_THROW(ComplexMatrix({{Complex(1.0, kInfinity)}}), InputError);
}

TEST(SchattenNorm, RejectsSmallP) {
  EXPECT_THROW(schatten_norm(ComplexMatrix::identity(2), 0.5), InputError);
  EXPECT_THROW(schatten_norm(ComplexMatrix::identity(2), std::nan("")), InputError);
}

TEST(SchattenNorm, UnitaryInvariance) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 7;
    const ComplexMatrix a = random_gaussian_matrix(n, n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix v = random_unitary(n, rng);
    const ComplexMatrix b = matmul(matmul(u, a), v);
    for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) {
      const double na = schatten_norm(a, p);
      EXPECT_LE(std::abs(schatten_norm(b, p) - na), 1e-8 * na);
    }
  }
}

TEST(SchattenNorm, TriangleInequalityAndHomogeneity) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 6;
    const ComplexMatrix a = random_gaussian_matrix(n, n, rng);
    const ComplexMatrix b = random_gaussian_matrix(n, n, rng);
    const Complex s = random_gaussian_complex(rng);
    for (double p : {1.0, 2.0, kInfinity}) {
      EXPECT_LE(schatten_norm(a + b, p), schatten_norm(a, p) + schatten_norm(b, p) + 1e-8);
      EXPECT_NEAR(schatten_norm(s * a, p), std::abs(s) * schatten_norm(a, p),
                  1e-8 * std::abs(s) * schatten_norm(a, p));
    }
  }
}

TEST(SchattenNorm, FrobeniusCrossCheck) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_gaussian_matrix(1 + trial % 5, 1 + trial % 8, rng);
    double sum = 0.0;
    for (const Complex& z : a.entries()) sum += std::norm(z);
    EXPECT_NEAR(schatten_norm(a, 2.0), std::sqrt(sum), 1e-10 * std::sqrt(sum));
    EXPECT_NEAR(frobenius_norm(a), std::sqrt(sum), 1e-12 * std::sqrt(sum));
  }
}

TEST(Polar, FactorIsUnitaryAndRecoversTraceNorm) {
  Rng rng(8);
  const ComplexMatrix a = random_gaussian_matrix(5, 5, rng);
  const PolarDecomposition p = polar_decomposition(a);
  const ComplexMatrix w = p.unitary_factor;
  const ComplexMatrix id = matmul(w.adjoint(), w);
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) {
      EXPECT_NEAR(std::abs(id(i, j) - (i == j ? 1.0 : 0.0)), 0.0, 1e-10);
    }
  }
  // <W, A> = tr(W^H A) = ||A||_1.
  Complex inner = 0.0;
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) inner += std::conj(w(i, j)) * a(i, j);
  }
  EXPECT_NEAR(inner.real(), trace_norm(a), 1e-10);
  EXPECT_NEAR(inner.imag(), 0.0, 1e-10);
}

TEST(Cmx, RoundTripIsExact) {
  Rng rng(9);
  ComplexMatrix a = random_gaussian_matrix(3, 4, rng);
  a(0, 0) = Complex(-0.0, 1e-300);
  a(1, 2) = Complex(0.1, -1.0 / 3.0);
  std::stringstream s;
  write_cmx(s, a);
  const ComplexMatrix b = read_cmx(s);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(std::signbit(b(0, 0).real()));
}

TEST(Cmx, RejectsMalformed) {
  for (const char* text : {"", "2\n", "1 1\n1\n", "1 2\n1 0\n", "1 1\n1 0\n2 0\n",
                           "1 1\nnan 0\n", "0 1\n", "1 1\n1 x\n", "-1 1\n1 0\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_cmx(in), FormatError) << text;
  }
}

TEST(MapNormEstimate, IdentityAndTranspose) {
  for (Index n : {1u, 3u, 6u}) {
    const double id = map_trace_norm_lower_bound(ScaledIdentityMap(n), 4, 1);
    EXPECT_GE(id, 1.0 - 1e-12);
    EXPECT_LE(id, 1.0 + 1e-8);
    EXPECT_NEAR(map_trace_norm_lower_bound(TransposeMap(n), 4, 2), 1.0, 1e-8);
  }
}

TEST(MapNormEstimate, TriangularTruncationAtTwo) {
  const FunctionMap tri(2, [](const ComplexMatrix& x) { return triangular_projection(x); });
  EXPECT_GE(map_trace_norm_lower_bound(tri, 8, 3), std::sqrt(5.0) / 2.0 - 1e-12);
}

TEST(MapNormEstimate, TriangularTruncationDominatesGrowthRatio) {
  for (Index n : {4u, 8u, 16u}) {
    const FunctionMap tri(n, [](const ComplexMatrix& x) { return triangular_projection(x); });
    EXPECT_GE(map_trace_norm_lower_bound(tri, 4, 4), triangular_growth_ratio(n) - 1e-9);
  }
}

TEST(MapNormEstimate, RejectsNonLinearMaps) {
  const FunctionMap bad(3, [](const ComplexMatrix& x) {
    ComplexMatrix y = x;
    for (Complex& z : y.entries()) z = std::abs(z);
    return y;
  });
  EXPECT_THROW(map_trace_norm_lower_bound(bad, 2, 0), InputError);
}

TEST(MapNormEstimate, TwoSidedMapHitsClosedForm) {
  Rng rng(12);
  const ComplexMatrix a = random_gaussian_matrix(4, 4, rng);
  const ComplexMatrix b = random_gaussian_matrix(4, 4, rng);
  const TwoSidedMap m(a, b);
  const double est = map_trace_norm_lower_bound(m, 8, 5);
  EXPECT_LE(est, *m.known_norm_bound() * (1 + 1e-9));
  EXPECT_GE(est, *m.known_norm_bound() * (1 - 1e-6));
}

// Brute-force maximum of ||L(u v^H)||_1 over a grid of unit vectors in C^2,
// plus the Lipschitz slack of the grid.
TEST(MapNormEstimate, NeverExceedsGridMaximumOnTwoByTwo) {
  Rng rng(13);
  constexpr int kTheta = 24;
  constexpr int kPhase = 24;
  std::vector<std::vector<Complex>> grid;
  for (int t = 0; t <= kTheta; ++t) {
    const double theta = (std::numbers::pi / 2.0) * t / kTheta;
    for (int p = 0; p < kPhase; ++p) {
      const double phase = 2.0 * std::numbers::pi * p / kPhase;
      grid.push_back({std::cos(theta), std::sin(theta) * std::polar(1.0, phase)});
    }
  }
  // Largest distance from a unit vector to the grid, modulo a global phase.
  const double mesh = std::numbers::pi / 2.0 / kTheta + std::numbers::pi / kPhase;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ComplexMatrix> images;
    for (Index i = 1; i <= 2; ++i) {
      for (Index j = 1; j <= 2; ++j) images.push_back(random_gaussian_matrix(2, 2, rng));
    }
    const FunctionMap map(2, [images](const ComplexMatrix& x) {
      ComplexMatrix y(2, 2);
      for (Index t = 0; t < 4; ++t) y += x(t / 2, t % 2) * images[t];
      return y;
    });
    double grid_max = 0.0;
    for (const auto& u : grid) {
      for (const auto& v : grid) grid_max = std::max(grid_max, rank_one_image_norm(map, u, v));
    }
    double crude = 0.0;
    for (const auto& m : images) crude += trace_norm(m);
    const double est = map_trace_norm_lower_bound(map, 8, static_cast<std::uint64_t>(trial));
    EXPECT_LE(est, grid_max + 2.0 * crude * mesh + 1e-8);
    EXPECT_GE(est, grid_max - 1e-8);
  }
}

}  // namespace
}  // namespace nestalg
