#include "nestalg/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "nestalg/errors.hpp"

namespace nestalg {
namespace {

void check_mask_index(Index dim, Index i, Index j) {
  if (i < 1 || j < 1 || i > dim || j > dim) {
    throw InputError("mask position (" + std::to_string(i) + "," +
                     std::to_string(j) + ") outside dimension " +
                     std::to_string(dim));
  }
}

}  // namespace

NestMask::NestMask(Index dim, bool fill)
    : dim_(dim), bits_(dim * dim, fill ? 1 : 0) {}

NestMask NestMask::upper_triangular(Index dim) {
  NestMask m(dim);
  for (Index i = 1; i <= dim; ++i) {
    for (Index j = i; j <= dim; ++j) m.set(i, j, true);
  }
  return m;
}

NestMask NestMask::diagonal(Index dim) {
  NestMask m(dim);
  for (Index i = 1; i <= dim; ++i) m.set(i, i, true);
  return m;
}

NestMask NestMask::from_labels(const std::vector<std::int64_t>& labels) {
  NestMask m(labels.size());
  for (Index i = 1; i <= labels.size(); ++i) {
    for (Index j = 1; j <= labels.size(); ++j) {
      m.set(i, j, labels[i - 1] <= labels[j - 1]);
    }
  }
  return m;
}

bool NestMask::allowed(Index i, Index j) const {
  check_mask_index(dim_, i, j);
  return bits_[(i - 1) * dim_ + (j - 1)] != 0;
}

void NestMask::set(Index i, Index j, bool value) {
  check_mask_index(dim_, i, j);
  bits_[(i - 1) * dim_ + (j - 1)] = value ? 1 : 0;
}

Index NestMask::count() const {
  return static_cast<Index>(std::count(bits_.begin(), bits_.end(), 1));
}

std::optional<std::vector<std::int64_t>> NestMask::preorder_labels() const {
  // A total preorder is reflexive and total; it is then determined by the
  // number of elements each index dominates, which must reproduce the mask.
  std::vector<std::int64_t> below(dim_, 0);
  for (Index i = 1; i <= dim_; ++i) {
    if (!allowed(i, i)) return std::nullopt;
    for (Index j = 1; j <= dim_; ++j) {
      if (!allowed(i, j) && !allowed(j, i)) return std::nullopt;
      if (allowed(j, i)) ++below[i - 1];
    }
  }
  std::vector<std::int64_t> sorted = below;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::int64_t> labels(dim_);
  for (Index i = 0; i < dim_; ++i) {
    labels[i] = std::lower_bound(sorted.begin(), sorted.end(), below[i]) -
                sorted.begin();
  }
  if (from_labels(labels) != *this) return std::nullopt;
  return labels;
}

bool NestMask::supports(const ComplexMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) return false;
  for (Index i = 1; i <= dim_; ++i) {
    for (Index j = 1; j <= dim_; ++j) {
      if (!allowed(i, j) && m(i - 1, j - 1) != Complex(0.0)) return false;
    }
  }
  return true;
}

ComplexMatrix NestMask::restrict(const ComplexMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw InputError("mask and matrix dimensions differ");
  }
  ComplexMatrix out(dim_, dim_);
  for (Index i = 1; i <= dim_; ++i) {
    for (Index j = 1; j <= dim_; ++j) {
      if (allowed(i, j)) out(i - 1, j - 1) = m(i - 1, j - 1);
    }
  }
  return out;
}

std::string NestMask::to_text() const {
  std::string out;
  out.reserve(dim_ * (dim_ + 1));
  for (Index i = 1; i <= dim_; ++i) {
    for (Index j = 1; j <= dim_; ++j) out += allowed(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

ShellKind parse_shell_kind(std::string_view text) {
  if (text == "M") return ShellKind::kM;
  if (text == "E") return ShellKind::kE;
  if (text == "F") return ShellKind::kF;
  if (text == "H") return ShellKind::kH;
  throw InputError("shell kind must be one of M, E, F, H");
}

bool in_shell(ShellKind kind, Index n, Index i, Index j) {
  switch (kind) {
    case ShellKind::kM: return std::max(i, j) <= n;
    case ShellKind::kE: return std::min(i, j) <= n;
    case ShellKind::kF: return std::max(i, j) == n;
    case ShellKind::kH: return std::min(i, j) == n;
  }
  return false;
}

ComplexMatrix shell_projection(const ComplexMatrix& a, Index n, ShellKind kind) {
  if (!a.is_square()) throw InputError("shell projection needs a square matrix");
  if (n < 1 || n > a.rows()) {
    throw InputError("shell index " + std::to_string(n) + " outside 1.." +
                     std::to_string(a.rows()));
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (Index i = 1; i <= a.rows(); ++i) {
    for (Index j = 1; j <= a.cols(); ++j) {
      if (in_shell(kind, n, i, j)) out(i - 1, j - 1) = a(i - 1, j - 1);
    }
  }
  return out;
}

ComplexMatrix triangular_projection(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw InputError("triangular projection needs a square matrix");
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = i; j < a.cols(); ++j) out(i, j) = a(i, j);
  }
  return out;
}

double triangular_growth_ratio(Index n) {
  if (n < 1) throw InputError("growth ratio needs N >= 1");
  const ComplexMatrix tri = triangular_projection(ComplexMatrix::ones(n, n));
  return trace_norm(tri) / static_cast<double>(n);
}

ComplexMatrix schur_pattern_matrix(Complex lambda, Complex mu, Index n) {
  if (n < 1) throw InputError("pattern size must be positive");
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = i > j ? lambda : mu;
  }
  return m;
}

double schur_pattern_growth(Complex lambda, Complex mu, Index n) {
  // The pattern acts as a multiplier on ones_N, so its image is the pattern.
  const ComplexMatrix image =
      hadamard(schur_pattern_matrix(lambda, mu, n), ComplexMatrix::ones(n, n));
  return trace_norm(image) / static_cast<double>(n);
}

std::vector<IndexPair> shell_basis(const NestMask& mask) {
  std::vector<IndexPair> out;
  out.reserve(mask.count());
  for (Index n = 1; n <= mask.dim(); ++n) {
    for (Index i = 1; i <= n; ++i) {
      if (mask.allowed(i, n)) out.emplace_back(i, n);
    }
    for (Index j = n - 1; j >= 1; --j) {
      if (mask.allowed(n, j)) out.emplace_back(n, j);
    }
  }
  return out;
}

FunctionMap basis_prefix_projection(const NestMask& mask, Index k) {
  const auto basis = shell_basis(mask);
  if (k > basis.size()) {
    throw InputError("prefix length exceeds the basis size");
  }
  NestMask prefix(mask.dim());
  for (Index t = 0; t < k; ++t) prefix.set(basis[t].first, basis[t].second, true);
  return FunctionMap(mask.dim(), [prefix](const ComplexMatrix& x) {
    return prefix.restrict(x);
  });
}

BasisConstantReport basis_constant_estimate(const NestMask& mask,
                                            Index prefix_count, int restarts,
                                            std::uint64_t seed) {
  const Index total = mask.count();
  if (prefix_count < 1 || prefix_count > total) {
    throw InputError("prefix_count must lie in 1.." + std::to_string(total));
  }
  BasisConstantReport report;
  report.per_prefix.reserve(prefix_count);
  for (Index k = 1; k <= prefix_count; ++k) {
    const FunctionMap projection = basis_prefix_projection(mask, k);
    NormEstimateOptions options;
    options.restarts = restarts;
    options.seed = seed + k;
    const double value = map_trace_norm_lower_bound(projection, options);
    report.per_prefix.push_back(value);
    if (value > report.estimate) {
      report.estimate = value;
      report.worst_prefix = k;
    }
  }
  return report;
}

std::vector<GrowthRow> triangular_growth_table(const std::vector<Index>& sizes) {
  std::vector<Index> sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::future<GrowthRow>> pending;
  pending.reserve(sorted.size());
  for (Index n : sorted) {
    pending.push_back(std::async(std::launch::async, [n] {
      GrowthRow row;
      row.n = n;
      row.ratio = triangular_growth_ratio(n);
      row.ratio_over_log = n > 1 ? row.ratio / std::log(static_cast<double>(n))
                                 : std::nan("");
      return row;
    }));
  }
  std::vector<GrowthRow> rows;
  rows.reserve(pending.size());
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

}  // namespace nestalg
