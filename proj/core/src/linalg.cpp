#include "nestalg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nestalg/errors.hpp"
#include "nestalg/random.hpp"

namespace nestalg {
namespace {

using RowMajorXcd =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_finite(std::span<const Complex> entries) {
  for (const Complex& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InputError("matrix entry is not finite");
    }
  }
}

void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("matrix shape mismatch: " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(Index rows, Index cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw InputError("entry count " + std::to_string(entries_.size()) +
                     " does not match " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  check_finite(entries_);
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("ragged matrix literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  check_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(Index n) {
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::ones(Index rows, Index cols) {
  return {rows, cols, std::vector<Complex>(rows * cols, Complex(1.0))};
}

ComplexMatrix ComplexMatrix::unit(Index n, Index i, Index j) {
  if (i < 1 || j < 1 || i > n || j > n) {
    throw InputError("matrix unit index out of range");
  }
  ComplexMatrix m(n, n);
  m(i - 1, j - 1) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<Index>(m.rows()), static_cast<Index>(m.cols()));
  Eigen::Map<RowMajorXcd>(out.entries_.data(), m.rows(), m.cols()) = m;
  check_finite(out.entries_);
  return out;
}

Eigen::MatrixXcd ComplexMatrix::to_eigen() const {
  return Eigen::Map<const RowMajorXcd>(entries_.data(),
                                       static_cast<Eigen::Index>(rows_),
                                       static_cast<Eigen::Index>(cols_));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (Index r = 0; r < rows_; ++r) {
    for (Index c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (Index r = 0; r < rows_; ++r) {
    for (Index c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  check_same_shape(*this, other);
  for (Index k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  check_same_shape(*this, other);
  for (Index k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (Complex& z : entries_) z *= scale;
  return *this;
}

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (Index k = 0; k < a.entries_.size(); ++k) {
    const Complex x = a.entries_[k];
    const Complex y = b.entries_[k];
    // +0 and -0 compare equal here; everything else must match exactly.
    if (x.real() != y.real() || x.imag() != y.imag()) return false;
  }
  return true;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matmul: inner dimension mismatch");
  return ComplexMatrix::from_eigen(a.to_eigen() * b.to_eigen());
}

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_shape(a, b);
  ComplexMatrix out(a.rows(), a.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) * b(r, c);
  }
  return out;
}

SingularSpectrum singular_values(const ComplexMatrix& a) {
  check_finite(a.entries());
  SingularSpectrum out;
  if (a.empty()) return out;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a.to_eigen());
  const auto& s = svd.singularValues();
  out.values.assign(s.data(), s.data() + s.size());
  // Eigen already sorts; enforce it so the invariant never depends on that.
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

double schatten_norm(const SingularSpectrum& spectrum, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw InputError("Schatten exponent must satisfy p >= 1, got " +
                     std::to_string(p));
  }
  if (spectrum.values.empty()) return 0.0;
  if (std::isinf(p)) return spectrum.largest();
  if (p == 1.0) {
    double sum = 0.0;
    for (double s : spectrum.values) sum += s;
    return sum;
  }
  // Scale by the largest value to avoid overflow for large p.
  const double top = spectrum.largest();
  if (top == 0.0) return 0.0;
  double sum = 0.0;
  for (double s : spectrum.values) sum += std::pow(s / top, p);
  return top * std::pow(sum, 1.0 / p);
}

double schatten_norm(const ComplexMatrix& a, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw InputError("Schatten exponent must satisfy p >= 1, got " +
                     std::to_string(p));
  }
  return schatten_norm(singular_values(a), p);
}

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const Complex& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

PolarDecomposition polar_decomposition(const ComplexMatrix& a) {
  check_finite(a.entries());
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a.to_eigen(),
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  PolarDecomposition out;
  out.unitary_factor =
      ComplexMatrix::from_eigen(svd.matrixU() * svd.matrixV().adjoint());
  const auto& s = svd.singularValues();
  out.spectrum.values.assign(s.data(), s.data() + s.size());
  return out;
}

bool is_upper_triangular(const ComplexMatrix& a) {
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < std::min(r, a.cols()); ++c) {
      if (a(r, c) != Complex(0.0)) return false;
    }
  }
  return true;
}

// random.hpp

Complex random_gaussian_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

std::vector<Complex> random_unit_vector(Index n, Rng& rng) {
  std::vector<Complex> v(n);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (Complex& z : v) {
      z = random_gaussian_complex(rng);
      norm += std::norm(z);
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (Complex& z : v) z /= norm;
  return v;
}

ComplexMatrix random_gaussian_matrix(Index rows, Index cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (Complex& z : m.entries()) z = random_gaussian_complex(rng);
  return m;
}

ComplexMatrix random_unitary(Index n, Rng& rng) {
  const Eigen::MatrixXcd g = random_gaussian_matrix(n, n, rng).to_eigen();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(
                                               static_cast<Eigen::Index>(n),
                                               static_cast<Eigen::Index>(n));
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < r.rows(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return ComplexMatrix::from_eigen(q);
}

Complex random_in_disc(double radius, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double rho = radius * std::sqrt(unit(rng));
  const double theta = 2.0 * M_PI * unit(rng);
  return std::polar(rho, theta);
}

}  // namespace nestalg
