#ifndef NESTALG_DECOMPOSITION_HPP_
#define NESTALG_DECOMPOSITION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nestalg/linalg.hpp"
#include "nestalg/matrix_map.hpp"

namespace nestalg {

// Boolean dim x dim pattern of allowed matrix positions (1-based access).
// Any pattern is a *-diagram; a nest-algebra pattern is one induced by a
// total preorder, allowed(i, j) <=> label(i) <= label(j).
class NestMask {
 public:
  NestMask() = default;
  explicit NestMask(Index dim, bool fill = false);

  static NestMask full(Index dim) { return NestMask(dim, true); }
  static NestMask empty(Index dim) { return NestMask(dim, false); }
  // Upper triangle including the diagonal.
  static NestMask upper_triangular(Index dim);
  static NestMask diagonal(Index dim);
  static NestMask from_labels(const std::vector<std::int64_t>& labels);

  Index dim() const { return dim_; }
  bool allowed(Index i, Index j) const;
  void set(Index i, Index j, bool value);
  Index count() const;

  // Labels realising the mask as a total preorder, if it is one. Labels are
  // dense ranks starting at 0.
  std::optional<std::vector<std::int64_t>> preorder_labels() const;
  bool is_nest_mask() const { return preorder_labels().has_value(); }

  // True when every nonzero entry of `m` sits on an allowed position.
  bool supports(const ComplexMatrix& m) const;
  ComplexMatrix restrict(const ComplexMatrix& m) const;

  // Rows of 0/1 characters.
  std::string to_text() const;

  friend bool operator==(const NestMask&, const NestMask&) = default;

 private:
  Index dim_ = 0;
  std::vector<std::uint8_t> bits_;
};

enum class ShellKind {
  kM,  // max(i, j) <= n   (range of P_n)
  kE,  // min(i, j) <= n   (range of Q_n)
  kF,  // max(i, j) == n   (shell)
  kH,  // min(i, j) == n   (corner)
};

ShellKind parse_shell_kind(std::string_view text);
bool in_shell(ShellKind kind, Index n, Index i, Index j);

ComplexMatrix shell_projection(const ComplexMatrix& a, Index n, ShellKind kind);

// Keeps entries with i <= j.
ComplexMatrix triangular_projection(const ComplexMatrix& a);

// ||triu(ones_N)||_1 / ||ones_N||_1 = ||triu(ones_N)||_1 / N.
double triangular_growth_ratio(Index n);

// N x N pattern: lambda strictly below the diagonal, mu on and above it.
ComplexMatrix schur_pattern_matrix(Complex lambda, Complex mu, Index n);
// ||schur_pattern_matrix(lambda, mu, N)||_1 / N.
double schur_pattern_growth(Complex lambda, Complex mu, Index n);

using IndexPair = std::pair<Index, Index>;

// Allowed positions in shell order: shell n runs (1,n), (2,n), ..., (n,n),
// (n,n-1), ..., (n,1).
std::vector<IndexPair> shell_basis(const NestMask& mask);

// Coordinate projection onto the first `k` pairs of shell_basis(mask).
FunctionMap basis_prefix_projection(const NestMask& mask, Index k);

struct BasisConstantReport {
  double estimate = 0.0;          // max over prefixes
  Index worst_prefix = 0;         // prefix length attaining it
  std::vector<double> per_prefix; // entry k - 1 is the estimate for prefix k
};

// Lower bound on the basis constant of the first `prefix_count` elements of
// shell_basis(mask).
BasisConstantReport basis_constant_estimate(const NestMask& mask,
                                            Index prefix_count, int restarts,
                                            std::uint64_t seed);

struct GrowthRow {
  Index n = 0;
  double ratio = 0.0;
  double ratio_over_log = 0.0;  // NaN at N = 1
};

// Evaluated independently per N, returned in ascending N.
std::vector<GrowthRow> triangular_growth_table(const std::vector<Index>& sizes);

}  // namespace nestalg

#endif  // NESTALG_DECOMPOSITION_HPP_
