#include "nestalg/matrix_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nestalg/errors.hpp"
#include "nestalg/random.hpp"

namespace nestalg {
namespace {

void check_unit_index(Index n, Index i) {
  if (i < 1 || i > n) {
    throw InputError("index " + std::to_string(i) + " outside 1.." +
                     std::to_string(n));
  }
}

void check_argument(const MatrixMap& map, const ComplexMatrix& x) {
  if (x.rows() != map.dim() || x.cols() != map.dim()) {
    throw InputError("map of dimension " + std::to_string(map.dim()) +
                     " applied to " + std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()) + " matrix");
  }
}

ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  ComplexMatrix x(u.size(), v.size());
  for (Index a = 0; a < u.size(); ++a) {
    for (Index b = 0; b < v.size(); ++b) x(a, b) = u[a] * std::conj(v[b]);
  }
  return x;
}

// <W, Y> = tr(W^H Y).
Complex frobenius_inner(const ComplexMatrix& w, const ComplexMatrix& y) {
  Complex sum = 0.0;
  const auto we = w.entries();
  const auto ye = y.entries();
  for (Index k = 0; k < we.size(); ++k) sum += std::conj(we[k]) * ye[k];
  return sum;
}

void normalize(std::vector<Complex>& v) {
  double norm = 0.0;
  for (const Complex& z : v) norm += std::norm(z);
  norm = std::sqrt(norm);
  for (Complex& z : v) z /= norm;
}

void check_linearity(const MatrixMap& map, Rng& rng, double tolerance) {
  const Index n = map.dim();
  for (int trial = 0; trial < 2; ++trial) {
    const ComplexMatrix x = random_gaussian_matrix(n, n, rng);
    const ComplexMatrix y = random_gaussian_matrix(n, n, rng);
    const Complex a = random_gaussian_complex(rng);
    const Complex b = random_gaussian_complex(rng);
    const ComplexMatrix lx = map(x);
    const ComplexMatrix ly = map(y);
    const ComplexMatrix lhs = map(a * x + b * y);
    const ComplexMatrix rhs = a * lx + b * ly;
    const double scale =
        std::abs(a) * frobenius_norm(lx) + std::abs(b) * frobenius_norm(ly);
    if (frobenius_norm(lhs - rhs) > tolerance * std::max(1.0, scale)) {
      throw InputError("map failed the linearity probe");
    }
  }
}

struct AscentState {
  std::vector<Complex> u;
  std::vector<Complex> v;
  double value = 0.0;
};

double ascend(const MatrixMap& map, AscentState& state,
              const NormEstimateOptions& options) {
  const Index n = map.dim();
  ComplexMatrix image = map(outer(state.u, state.v));
  PolarDecomposition polar = polar_decomposition(image);
  state.value = schatten_norm(polar.spectrum, 1.0);

  std::vector<Complex> coeffs(n);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double before = state.value;

    // u-step: <W, L(e_a v^H)> is linear in u.
    double cnorm = 0.0;
    for (Index a = 0; a < n; ++a) {
      ComplexMatrix x(n, n);
      for (Index b = 0; b < n; ++b) x(a, b) = std::conj(state.v[b]);
      coeffs[a] = frobenius_inner(polar.unitary_factor, map(x));
      cnorm += std::norm(coeffs[a]);
    }
    if (cnorm == 0.0) break;
    for (Index a = 0; a < n; ++a) state.u[a] = std::conj(coeffs[a]);
    normalize(state.u);
    image = map(outer(state.u, state.v));
    polar = polar_decomposition(image);
    state.value = std::max(state.value, schatten_norm(polar.spectrum, 1.0));

    // v-step: <W, L(u e_b^T)> enters with conj(v_b).
    double dnorm = 0.0;
    for (Index b = 0; b < n; ++b) {
      ComplexMatrix x(n, n);
      for (Index a = 0; a < n; ++a) x(a, b) = state.u[a];
      coeffs[b] = frobenius_inner(polar.unitary_factor, map(x));
      dnorm += std::norm(coeffs[b]);
    }
    if (dnorm == 0.0) break;
    state.v = coeffs;
    normalize(state.v);
    image = map(outer(state.u, state.v));
    polar = polar_decomposition(image);
    state.value = std::max(state.value, schatten_norm(polar.spectrum, 1.0));

    if (state.value - before < options.tolerance) break;
  }
  return state.value;
}

}  // namespace

Complex MatrixMap::image_entry(Index i, Index j, Index k, Index l) const {
  const Index n = dim();
  check_unit_index(n, k);
  check_unit_index(n, l);
  return apply(ComplexMatrix::unit(n, i, j))(k - 1, l - 1);
}

// ScaledIdentityMap

ScaledIdentityMap::ScaledIdentityMap(Index dim, Complex scale)
    : dim_(dim), scale_(scale) {}

ComplexMatrix ScaledIdentityMap::apply(const ComplexMatrix& x) const {
  check_argument(*this, x);
  return scale_ * x;
}

Complex ScaledIdentityMap::image_entry(Index i, Index j, Index k,
                                       Index l) const {
  check_unit_index(dim_, i);
  check_unit_index(dim_, j);
  check_unit_index(dim_, k);
  check_unit_index(dim_, l);
  return (i == k && j == l) ? scale_ : Complex(0.0);
}

// TransposeMap

ComplexMatrix TransposeMap::apply(const ComplexMatrix& x) const {
  check_argument(*this, x);
  return x.transpose();
}

Complex TransposeMap::image_entry(Index i, Index j, Index k, Index l) const {
  check_unit_index(dim_, i);
  check_unit_index(dim_, j);
  check_unit_index(dim_, k);
  check_unit_index(dim_, l);
  return (i == l && j == k) ? Complex(1.0) : Complex(0.0);
}

// SchurMultiplierMap

SchurMultiplierMap::SchurMultiplierMap(ComplexMatrix coefficients)
    : coefficients_(std::move(coefficients)) {
  if (!coefficients_.is_square() || coefficients_.empty()) {
    throw InputError("multiplier coefficients must form a non-empty square");
  }
}

ComplexMatrix SchurMultiplierMap::apply(const ComplexMatrix& x) const {
  check_argument(*this, x);
  return hadamard(coefficients_, x);
}

Complex SchurMultiplierMap::image_entry(Index i, Index j, Index k,
                                        Index l) const {
  const Index n = dim();
  check_unit_index(n, i);
  check_unit_index(n, j);
  check_unit_index(n, k);
  check_unit_index(n, l);
  return (i == k && j == l) ? coefficients_(i - 1, j - 1) : Complex(0.0);
}

// TwoSidedMap

TwoSidedMap::TwoSidedMap(ComplexMatrix left, ComplexMatrix right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (!left_.is_square() || !right_.is_square() ||
      left_.rows() != right_.rows() || left_.empty()) {
    throw InputError("two-sided map factors must be square of equal size");
  }
  norm_ = operator_norm(left_) * operator_norm(right_);
}

ComplexMatrix TwoSidedMap::apply(const ComplexMatrix& x) const {
  check_argument(*this, x);
  return matmul(matmul(left_, x), right_);
}

Complex TwoSidedMap::image_entry(Index i, Index j, Index k, Index l) const {
  const Index n = dim();
  check_unit_index(n, i);
  check_unit_index(n, j);
  check_unit_index(n, k);
  check_unit_index(n, l);
  // (A e_ij B)_kl = A_ki B_jl
  return left_(k - 1, i - 1) * right_(j - 1, l - 1);
}

// DenseMatrixMap

DenseMatrixMap::DenseMatrixMap(Index dim, Eigen::MatrixXcd representation)
    : dim_(dim), rep_(std::move(representation)) {
  const auto size = static_cast<Eigen::Index>(dim * dim);
  if (rep_.rows() != size || rep_.cols() != size) {
    throw InputError("dense map representation must be dim^2 x dim^2");
  }
  diagonal_ = true;
  for (Eigen::Index c = 0; c < size && diagonal_; ++c) {
    for (Eigen::Index r = 0; r < size; ++r) {
      if (r != c && rep_(r, c) != Complex(0.0)) {
        diagonal_ = false;
        break;
      }
    }
  }
}

DenseMatrixMap DenseMatrixMap::from_map(const MatrixMap& map) {
  const Index n = map.dim();
  Eigen::MatrixXcd rep(static_cast<Eigen::Index>(n * n),
                       static_cast<Eigen::Index>(n * n));
  for (Index i = 1; i <= n; ++i) {
    for (Index j = 1; j <= n; ++j) {
      const auto col = static_cast<Eigen::Index>((i - 1) * n + (j - 1));
      for (Index k = 1; k <= n; ++k) {
        for (Index l = 1; l <= n; ++l) {
          rep(static_cast<Eigen::Index>((k - 1) * n + (l - 1)), col) =
              map.image_entry(i, j, k, l);
        }
      }
    }
  }
  return {n, std::move(rep)};
}

ComplexMatrix DenseMatrixMap::apply(const ComplexMatrix& x) const {
  check_argument(*this, x);
  Eigen::VectorXcd vec(static_cast<Eigen::Index>(dim_ * dim_));
  const auto entries = x.entries();
  for (Index k = 0; k < entries.size(); ++k) {
    vec(static_cast<Eigen::Index>(k)) = entries[k];
  }
  const Eigen::VectorXcd out = rep_ * vec;
  return ComplexMatrix(dim_, dim_,
                       std::vector<Complex>(out.data(), out.data() + out.size()));
}

Complex DenseMatrixMap::image_entry(Index i, Index j, Index k, Index l) const {
  check_unit_index(dim_, i);
  check_unit_index(dim_, j);
  check_unit_index(dim_, k);
  check_unit_index(dim_, l);
  return rep_(static_cast<Eigen::Index>((k - 1) * dim_ + (l - 1)),
              static_cast<Eigen::Index>((i - 1) * dim_ + (j - 1)));
}

DenseMatrixMap DenseMatrixMap::minus_scaled_identity(Complex lambda) const {
  Eigen::MatrixXcd rep = rep_;
  rep.diagonal().array() -= lambda;
  return {dim_, std::move(rep)};
}

double DenseMatrixMap::norm_upper_bound() const {
  const Index n = dim_;
  double sum = 0.0;
  double largest = 0.0;
  for (Eigen::Index c = 0; c < rep_.cols(); ++c) {
    const Eigen::VectorXcd col = rep_.col(c);
    const ComplexMatrix image(
        n, n, std::vector<Complex>(col.data(), col.data() + col.size()));
    const double norm = trace_norm(image);
    sum += norm;
    largest = std::max(largest, norm);
  }
  double bound = std::min(sum, static_cast<double>(n) * largest);
  if (diagonal_) {
    // A Schur multiplier factors through its rows (or columns), so its norm
    // is at most the largest row (or column) l2-norm of its coefficients.
    double max_row = 0.0;
    double max_col = 0.0;
    for (Index a = 0; a < n; ++a) {
      double row = 0.0;
      double col = 0.0;
      for (Index b = 0; b < n; ++b) {
        const auto ab = static_cast<Eigen::Index>(a * n + b);
        const auto ba = static_cast<Eigen::Index>(b * n + a);
        row += std::norm(rep_(ab, ab));
        col += std::norm(rep_(ba, ba));
      }
      max_row = std::max(max_row, std::sqrt(row));
      max_col = std::max(max_col, std::sqrt(col));
    }
    bound = std::min({bound, max_row, max_col});
  }
  return bound;
}

double rank_one_image_norm(const MatrixMap& map, std::span<const Complex> u,
                           std::span<const Complex> v) {
  return trace_norm(map(outer(u, v)));
}

double map_trace_norm_lower_bound(const MatrixMap& map,
                                  const NormEstimateOptions& options) {
  const Index n = map.dim();
  if (n == 0) throw InputError("map dimension must be positive");
  if (options.restarts < 1) throw InputError("restarts must be positive");

  Rng rng(options.seed);
  if (options.check_linearity) {
    check_linearity(map, rng, options.linearity_tolerance);
  }

  AscentState flat;
  flat.u.assign(n, Complex(1.0 / std::sqrt(static_cast<double>(n))));
  flat.v = flat.u;
  double best = ascend(map, flat, options);

  for (int r = 0; r < options.restarts; ++r) {
    AscentState state;
    state.u = random_unit_vector(n, rng);
    state.v = random_unit_vector(n, rng);
    best = std::max(best, ascend(map, state, options));
  }
  return best;
}

double map_trace_norm_lower_bound(const MatrixMap& map, int restarts,
                                  std::uint64_t seed) {
  NormEstimateOptions options;
  options.restarts = restarts;
  options.seed = seed;
  return map_trace_norm_lower_bound(map, options);
}

}  // namespace nestalg
