#ifndef NESTALG_LINALG_HPP_
#define NESTALG_LINALG_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nestalg {

using Complex = std::complex<double>;
using Index = std::size_t;

// Dense row-major complex matrix. Entries are always finite; every
// constructor that accepts external data checks this. Element access through
// operator() is 0-based; the index calculus on top of it is 1-based.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(Index rows, Index cols);
  ComplexMatrix(Index rows, Index cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(Index rows, Index cols) { return {rows, cols}; }
  static ComplexMatrix identity(Index n);
  static ComplexMatrix ones(Index rows, Index cols);
  // e_{ij} of an n x n space, 1-based.
  static ComplexMatrix unit(Index n, Index i, Index j);
  static ComplexMatrix from_eigen(const Eigen::MatrixXcd& m);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  Complex& operator()(Index r, Index c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(Index r, Index c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  Eigen::MatrixXcd to_eigen() const;

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

  // Bitwise equality of every entry, dimensions included.
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);

// Singular values sorted non-increasing; length min(rows, cols).
struct SingularSpectrum {
  std::vector<double> values;

  double largest() const { return values.empty() ? 0.0 : values.front(); }
};

SingularSpectrum singular_values(const ComplexMatrix& a);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// (sum sigma_k^p)^(1/p); p = kInfinity gives the operator norm.
double schatten_norm(const ComplexMatrix& a, double p);
double schatten_norm(const SingularSpectrum& spectrum, double p);
inline double trace_norm(const ComplexMatrix& a) { return schatten_norm(a, 1.0); }
inline double operator_norm(const ComplexMatrix& a) {
  return schatten_norm(a, kInfinity);
}
double frobenius_norm(const ComplexMatrix& a);

// Unitary polar factor U V^H of a = U diag(s) V^H (thin SVD); together with
// the singular values it is what the norm estimators need.
struct PolarDecomposition {
  ComplexMatrix unitary_factor;
  SingularSpectrum spectrum;
};
PolarDecomposition polar_decomposition(const ComplexMatrix& a);

// Tests whether every i > j entry is exactly zero.
bool is_upper_triangular(const ComplexMatrix& a);

}  // namespace nestalg

#endif  // NESTALG_LINALG_HPP_
