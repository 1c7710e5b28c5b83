#ifndef NESTALG_MATRIX_MAP_HPP_
#define NESTALG_MATRIX_MAP_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "nestalg/linalg.hpp"

namespace nestalg {

// A linear map on dim x dim complex matrices, viewed as an operator on the
// trace class c_1 of that size.
//
// Implementations are immutable. `image_entry` exposes the matrix
// coefficients (Phi e_ij)_kl with 1-based indices; the default evaluates the
// full image of e_ij, so structured maps override it.
class MatrixMap {
 public:
  virtual ~MatrixMap() = default;

  virtual Index dim() const = 0;
  virtual ComplexMatrix apply(const ComplexMatrix& x) const = 0;
  virtual Complex image_entry(Index i, Index j, Index k, Index l) const;

  // True when the map scales every e_ij by a scalar; `multiplier_coefficient`
  // is then (Phi e_ij)_ij.
  virtual bool is_multiplier() const { return false; }

  // A rigorous upper bound on the c_1 -> c_1 norm when one is known in
  // closed form.
  virtual std::optional<double> known_norm_bound() const { return std::nullopt; }

  // True when image_entry is O(1) rather than a full application.
  virtual bool has_fast_entries() const { return false; }

  ComplexMatrix operator()(const ComplexMatrix& x) const { return apply(x); }
};

// X -> scale * X.
class ScaledIdentityMap final : public MatrixMap {
 public:
  bool has_fast_entries() const override { return true; }
  explicit ScaledIdentityMap(Index dim, Complex scale = 1.0);
  Index dim() const override { return dim_; }
  ComplexMatrix apply(const ComplexMatrix& x) const override;
  Complex image_entry(Index i, Index j, Index k, Index l) const override;
  bool is_multiplier() const override { return true; }
  std::optional<double> known_norm_bound() const override {
    return std::abs(scale_);
  }

 private:
  Index dim_;
  Complex scale_;
};

// X -> X^T. Preserves all singular values.
class TransposeMap final : public MatrixMap {
 public:
  bool has_fast_entries() const override { return true; }
  explicit TransposeMap(Index dim) : dim_(dim) {}
  Index dim() const override { return dim_; }
  ComplexMatrix apply(const ComplexMatrix& x) const override;
  Complex image_entry(Index i, Index j, Index k, Index l) const override;
  std::optional<double> known_norm_bound() const override { return 1.0; }

 private:
  Index dim_;
};

// Entrywise (Schur) multiplier X -> C o X.
class SchurMultiplierMap final : public MatrixMap {
 public:
  bool has_fast_entries() const override { return true; }
  explicit SchurMultiplierMap(ComplexMatrix coefficients);
  Index dim() const override { return coefficients_.rows(); }
  ComplexMatrix apply(const ComplexMatrix& x) const override;
  Complex image_entry(Index i, Index j, Index k, Index l) const override;
  bool is_multiplier() const override { return true; }
  const ComplexMatrix& coefficients() const { return coefficients_; }

 private:
  ComplexMatrix coefficients_;
};

// X -> A X B. Its c_1 norm is exactly ||A||_inf ||B||_inf.
class TwoSidedMap final : public MatrixMap {
 public:
  bool has_fast_entries() const override { return true; }
  TwoSidedMap(ComplexMatrix left, ComplexMatrix right);
  Index dim() const override { return left_.rows(); }
  ComplexMatrix apply(const ComplexMatrix& x) const override;
  Complex image_entry(Index i, Index j, Index k, Index l) const override;
  std::optional<double> known_norm_bound() const override { return norm_; }

 private:
  ComplexMatrix left_;
  ComplexMatrix right_;
  double norm_;
};

// Map given by its dim^2 x dim^2 matrix acting on row-major vec(X). Used for
// compressed maps, whose size is small.
class DenseMatrixMap final : public MatrixMap {
 public:
  bool has_fast_entries() const override { return true; }
  DenseMatrixMap(Index dim, Eigen::MatrixXcd representation);
  static DenseMatrixMap from_map(const MatrixMap& map);

  Index dim() const override { return dim_; }
  ComplexMatrix apply(const ComplexMatrix& x) const override;
  Complex image_entry(Index i, Index j, Index k, Index l) const override;
  bool is_multiplier() const override { return diagonal_; }

  const Eigen::MatrixXcd& representation() const { return rep_; }
  DenseMatrixMap minus_scaled_identity(Complex lambda) const;

  // Certified upper bound on the c_1 norm: min(sum_kl ||D e_kl||_1,
  // dim * max_kl ||D e_kl||_1); for multipliers additionally the Schur bound
  // min(max row l2-norm, max column l2-norm) of the coefficient matrix.
  double norm_upper_bound() const;

 private:
  Index dim_;
  Eigen::MatrixXcd rep_;
  bool diagonal_;
};

// Adapter for ad hoc maps (coordinate projections, test fixtures).
class FunctionMap final : public MatrixMap {
 public:
  using Function = std::function<ComplexMatrix(const ComplexMatrix&)>;
  FunctionMap(Index dim, Function f) : dim_(dim), f_(std::move(f)) {}
  Index dim() const override { return dim_; }
  ComplexMatrix apply(const ComplexMatrix& x) const override { return f_(x); }

 private:
  Index dim_;
  Function f_;
};

struct NormEstimateOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  int max_iterations = 200;
  double tolerance = 1e-9;
  bool check_linearity = true;
  double linearity_tolerance = 1e-8;
};

// Certified lower bound on the c_1 -> c_1 norm of `map`: the best value of
// ||map(u v^H)||_1 over unit u, v reached by alternating ascent from a flat
// start and `restarts` seeded random starts. Rank-one matrices are the
// extreme points of the trace-norm ball, so the supremum of this quantity is
// the norm itself.
//
// Throws InputError when the linearity probe fails.
double map_trace_norm_lower_bound(const MatrixMap& map,
                                  const NormEstimateOptions& options = {});
double map_trace_norm_lower_bound(const MatrixMap& map, int restarts,
                                  std::uint64_t seed);

// ||map(X)||_1 for X = u v^H; the objective of the estimator above.
double rank_one_image_norm(const MatrixMap& map, std::span<const Complex> u,
                           std::span<const Complex> v);

}  // namespace nestalg

#endif  // NESTALG_MATRIX_MAP_HPP_
