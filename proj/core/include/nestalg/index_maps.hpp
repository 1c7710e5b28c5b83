#ifndef NESTALG_INDEX_MAPS_HPP_
#define NESTALG_INDEX_MAPS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "nestalg/linalg.hpp"

namespace nestalg {

// Strictly increasing finite sequence of 1-based indices. values()[i - 1] is
// the i-th smallest element, so the map also reads as a function on 1..size().
class IndexMap {
 public:
  IndexMap() = default;
  explicit IndexMap(std::vector<Index> values);

  static IndexMap identity(Index n);
  // {first, first + step, ...} with `count` elements.
  static IndexMap arithmetic(Index first, Index step, Index count);
  // Parses "1,3,5".
  static IndexMap parse(std::string_view text);

  Index size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  // 1-based evaluation.
  Index operator()(Index i) const;
  Index max() const { return values_.empty() ? 0 : values_.back(); }
  const std::vector<Index>& values() const { return values_; }

  std::string to_string() const;

  friend bool operator==(const IndexMap&, const IndexMap&) = default;

 private:
  std::vector<Index> values_;
};

enum class InterleaveMode { kWeak, kStrict };

std::string_view to_string(InterleaveMode mode);
InterleaveMode parse_interleave_mode(std::string_view text);

// Weak: sigma(1) <= psi(1) < sigma(2) <= psi(2) < ...
// Strict: sigma(1) < psi(1) < sigma(2) < psi(2) < ... < sigma(n) < psi(n).
bool is_interleaved(const IndexMap& sigma, const IndexMap& psi,
                    InterleaveMode mode);

// N x N matrix B with B(sigma(i), psi(j)) = A(i, j), zero elsewhere.
ComplexMatrix apply_J(const IndexMap& sigma, const IndexMap& psi,
                      const ComplexMatrix& a, Index target_dim);

// n x n matrix A with A(k, l) = B(sigma(k), psi(l)).
ComplexMatrix apply_K(const IndexMap& sigma, const IndexMap& psi,
                      const ComplexMatrix& b);

// (outer o inner)(j) = outer(inner(j)).
IndexMap compose(const IndexMap& outer, const IndexMap& inner);

}  // namespace nestalg

#endif  // NESTALG_INDEX_MAPS_HPP_
