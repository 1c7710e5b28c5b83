#include "nestalg/flatten.hpp"

#include <algorithm>
#include <cmath>

#include "nestalg/errors.hpp"

namespace nestalg {
namespace {

void check_block(const ComplexMatrix& x) {
  if (!x.is_square() || x.empty()) {
    throw InputError("flattening needs a non-empty square matrix");
  }
  if (!is_upper_triangular(x)) {
    throw InputError("flattening needs an upper triangular matrix");
  }
  const double norm = trace_norm(x);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw InputError("flattening needs unit trace norm, got " +
                     std::to_string(norm));
  }
}

Index elimination_threshold(Index n, double delta) {
  // 1/0.05^2 evaluates to 399.99...; snap near-integers before flooring
  const double inv = 1.0 / (delta * delta);
  const double nearest = std::round(inv);
  const double whole = std::abs(inv - nearest) <= 1e-9 * nearest ? nearest : std::floor(inv);
  return n + 2 * static_cast<Index>(whole);
}

}  // namespace

std::vector<std::pair<Index, Index>> bad_pairs(const ComplexMatrix& x,
                                               double delta) {
  std::vector<std::pair<Index, Index>> out;
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = i + 1; j < x.cols(); ++j) {
      if (std::abs(x(i, j)) >= delta) out.emplace_back(i + 1, j + 1);
    }
  }
  return out;
}

std::vector<Index> good_indices(const ComplexMatrix& x, double delta) {
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  const Index dim = x.rows();
  const auto bad = bad_pairs(x, delta);

  std::vector<bool> touched(dim + 1, false);
  for (const auto& [i, j] : bad) touched[i] = touched[j] = true;
  std::vector<Index> eliminated;
  for (Index i = 1; i <= dim; ++i) {
    if (!touched[i]) eliminated.push_back(i);
  }

  std::vector<std::vector<Index>> neighbours(dim + 1);
  for (const auto& [i, j] : bad) {
    neighbours[i].push_back(j);
    neighbours[j].push_back(i);
  }
  std::vector<bool> blocked(dim + 1, false);
  std::vector<Index> independent;
  for (Index i = 1; i <= dim; ++i) {
    if (blocked[i]) continue;
    independent.push_back(i);
    for (Index j : neighbours[i]) blocked[j] = true;
  }
  return independent.size() > eliminated.size() ? independent : eliminated;
}

FlattenBlockReport flatten_block(const ComplexMatrix& x, Index n, double delta) {
  if (n < 1) throw InputError("target size n must be positive");
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  check_block(x);

  FlattenBlockReport report;
  report.bad_pairs = bad_pairs(x, delta).size();
  report.feasibility_threshold = elimination_threshold(n, delta);
  report.clique_bound = 1.0 + 1.0 / (delta * delta);

  // Elimination keeps the smallest indices untouched by bad pairs; fall back
  // to the independent set only when elimination is too lossy.
  const auto bad = bad_pairs(x, delta);
  std::vector<bool> touched(x.rows() + 1, false);
  for (const auto& [i, j] : bad) touched[i] = touched[j] = true;
  std::vector<Index> eliminated;
  for (Index i = 1; i <= x.rows(); ++i) {
    if (!touched[i]) eliminated.push_back(i);
  }
  report.good_set = eliminated.size() >= n ? eliminated : good_indices(x, delta);

  if (report.good_set.size() < n) {
    report.failure = "only " + std::to_string(report.good_set.size()) +
                     " good indices for n = " + std::to_string(n) +
                     "; N = " + std::to_string(x.rows()) +
                     " is below the feasibility threshold " +
                     std::to_string(report.feasibility_threshold);
    return report;
  }
  report.rho = IndexMap(std::vector<Index>(
      report.good_set.begin(), report.good_set.begin() + static_cast<long>(n)));
  report.success = true;
  return report;
}

FlattenSubspaceReport flatten_subspace(const std::vector<ComplexMatrix>& net,
                                       Index n, double epsilon) {
  if (n < 1) throw InputError("target size n must be positive");
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (net.empty()) throw InputError("net must not be empty");
  const Index dim = net.front().rows();
  for (const auto& x : net) {
    if (x.rows() != dim) throw InputError("net elements differ in size");
    check_block(x);
  }

  FlattenSubspaceReport report;
  const double nd = static_cast<double>(n);
  report.delta = epsilon / (nd * nd);

  IndexMap current = IndexMap::identity(dim);
  for (Index t = 0; t < net.size(); ++t) {
    // q_{t-1} x_t, read inside the range of the previous compressions.
    const ComplexMatrix restricted = apply_K(current, current, net[t]);
    FlattenStage stage;
    stage.stage = t + 1;
    stage.bad_pairs = bad_pairs(restricted, report.delta).size();
    const std::vector<Index> good = good_indices(restricted, report.delta);
    current = compose(current, IndexMap(good));
    stage.survivors = current.size();
    report.stages.push_back(stage);
    if (current.size() < 2 * n) {
      report.failed_stage = t + 1;
      report.failure = "stage " + std::to_string(t + 1) + " left " +
                       std::to_string(current.size()) + " indices, need " +
                       std::to_string(2 * n);
      return report;
    }
  }

  std::vector<Index> sigma;
  std::vector<Index> psi;
  for (Index k = 0; k < 2 * n; ++k) {
    (k % 2 == 0 ? sigma : psi).push_back(current.values()[k]);
  }
  report.sigma = IndexMap(sigma);
  report.psi = IndexMap(psi);

  report.success = true;
  for (const auto& x : net) {
    const double norm = trace_norm(apply_K(report.sigma, report.psi, x));
    report.compressed_norms.push_back(norm);
    if (norm > epsilon) report.success = false;
  }
  if (!report.success) report.failure = "compressed norm above epsilon";
  return report;
}

}  // namespace nestalg
