#include "nestalg/index_maps.hpp"

#include <charconv>

#include "nestalg/errors.hpp"

namespace nestalg {

IndexMap::IndexMap(std::vector<Index> values) : values_(std::move(values)) {
  for (Index k = 0; k < values_.size(); ++k) {
    if (values_[k] < 1) throw InputError("index maps are 1-based");
    if (k > 0 && values_[k] <= values_[k - 1]) {
      throw InputError("index map must be strictly increasing: " + to_string());
    }
  }
}

IndexMap IndexMap::identity(Index n) { return arithmetic(1, 1, n); }

IndexMap IndexMap::arithmetic(Index first, Index step, Index count) {
  if (step == 0 && count > 1) throw InputError("arithmetic step must be positive");
  std::vector<Index> values(count);
  for (Index k = 0; k < count; ++k) values[k] = first + k * step;
  return IndexMap(std::move(values));
}

IndexMap IndexMap::parse(std::string_view text) {
  std::vector<Index> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    Index value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() ||
        ptr != token.data() + token.size()) {
      throw InputError("bad index list '" + std::string(text) + "'");
    }
    values.push_back(value);
    pos = comma + 1;
  }
  return IndexMap(std::move(values));
}

Index IndexMap::operator()(Index i) const {
  if (i < 1 || i > values_.size()) {
    throw InputError("index map evaluated at " + std::to_string(i) +
                     " outside 1.." + std::to_string(values_.size()));
  }
  return values_[i - 1];
}

std::string IndexMap::to_string() const {
  std::string out;
  for (Index k = 0; k < values_.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(values_[k]);
  }
  return out;
}

std::string_view to_string(InterleaveMode mode) {
  return mode == InterleaveMode::kWeak ? "weak" : "strict";
}

InterleaveMode parse_interleave_mode(std::string_view text) {
  if (text == "weak") return InterleaveMode::kWeak;
  if (text == "strict") return InterleaveMode::kStrict;
  throw InputError("interleave mode must be 'weak' or 'strict'");
}

bool is_interleaved(const IndexMap& sigma, const IndexMap& psi,
                    InterleaveMode mode) {
  if (sigma.size() != psi.size()) {
    throw InputError("interleaving needs index maps of equal length");
  }
  const auto& s = sigma.values();
  const auto& p = psi.values();
  for (Index k = 0; k < s.size(); ++k) {
    const bool ok = mode == InterleaveMode::kStrict ? s[k] < p[k] : s[k] <= p[k];
    if (!ok) return false;
    if (k + 1 < s.size() && !(p[k] < s[k + 1])) return false;
  }
  return true;
}

ComplexMatrix apply_J(const IndexMap& sigma, const IndexMap& psi,
                      const ComplexMatrix& a, Index target_dim) {
  if (a.rows() != sigma.size() || a.cols() != psi.size()) {
    throw InputError("apply_J: matrix is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " but |sigma|=" +
                     std::to_string(sigma.size()) +
                     ", |psi|=" + std::to_string(psi.size()));
  }
  if (sigma.max() > target_dim || psi.max() > target_dim) {
    throw InputError("apply_J: index exceeds target dimension " +
                     std::to_string(target_dim));
  }
  ComplexMatrix b(target_dim, target_dim);
  for (Index i = 1; i <= sigma.size(); ++i) {
    for (Index j = 1; j <= psi.size(); ++j) {
      b(sigma(i) - 1, psi(j) - 1) = a(i - 1, j - 1);
    }
  }
  return b;
}

ComplexMatrix apply_K(const IndexMap& sigma, const IndexMap& psi,
                      const ComplexMatrix& b) {
  if (sigma.max() > b.rows() || psi.max() > b.cols()) {
    throw InputError("apply_K: index out of range for " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                     " matrix");
  }
  ComplexMatrix a(sigma.size(), psi.size());
  for (Index k = 1; k <= sigma.size(); ++k) {
    for (Index l = 1; l <= psi.size(); ++l) {
      a(k - 1, l - 1) = b(sigma(k) - 1, psi(l) - 1);
    }
  }
  return a;
}

IndexMap compose(const IndexMap& outer, const IndexMap& inner) {
  if (inner.max() > outer.size()) {
    throw InputError("compose: inner map reaches " +
                     std::to_string(inner.max()) + " but outer has only " +
                     std::to_string(outer.size()) + " elements");
  }
  std::vector<Index> values(inner.size());
  for (Index j = 1; j <= inner.size(); ++j) values[j - 1] = outer(inner(j));
  return IndexMap(std::move(values));
}

}  // namespace nestalg
