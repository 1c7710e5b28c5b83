#include "nestalg/extraction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <json.hpp>

#include "nestalg/errors.hpp"

namespace nestalg {
namespace {

// ---------------------------------------------------------------------------
// Coefficient access

// Reads (Phi e_ij)_kl. Maps without O(1) entries are applied once per (i, j)
// and the image is kept for the duration of one extraction.
class CoefficientReader {
 public:
  explicit CoefficientReader(const MatrixMap& phi) : phi_(phi) {}

  Complex operator()(Index i, Index j, Index k, Index l) {
    if (phi_.has_fast_entries()) return phi_.image_entry(i, j, k, l);
    auto it = images_.find({i, j});
    if (it == images_.end()) {
      it = images_
               .emplace(IndexPair{i, j},
                        phi_.apply(ComplexMatrix::unit(phi_.dim(), i, j)))
               .first;
    }
    return it->second(k - 1, l - 1);
  }

  Complex diagonal(Index i, Index j) { return (*this)(i, j, i, j); }

 private:
  using IndexPair = std::pair<Index, Index>;
  const MatrixMap& phi_;
  std::map<IndexPair, ComplexMatrix> images_;
};

// ---------------------------------------------------------------------------
// Order types of (i, j, k, l)

using RankVector = std::array<int, 4>;

RankVector rank_vector(Index i, Index j, Index k, Index l) {
  std::array<Index, 4> v{i, j, k, l};
  std::array<Index, 4> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  const auto end = std::unique(sorted.begin(), sorted.end());
  RankVector r{};
  for (int t = 0; t < 4; ++t) {
    r[t] = static_cast<int>(std::lower_bound(sorted.begin(), end, v[t]) -
                            sorted.begin());
  }
  return r;
}

int encode(const RankVector& r) { return ((r[0] * 4 + r[1]) * 4 + r[2]) * 4 + r[3]; }

// Position of every order type in the suppression schedule: i<k<j<l, then
// k<i<j<l, then i=k<j<l, then all remaining types lexicographically.
struct Schedule {
  std::array<int, 256> position{};
  int count = 0;
};

Schedule make_schedule() {
  std::vector<RankVector> types;
  for (int code = 0; code < 256; ++code) {
    const RankVector r{code / 64, (code / 16) % 4, (code / 4) % 4, code % 4};
    const int top = *std::max_element(r.begin(), r.end());
    bool surjective = true;
    for (int v = 0; v <= top; ++v) {
      surjective &= std::find(r.begin(), r.end(), v) != r.end();
    }
    if (surjective) types.push_back(r);
  }
  const std::array<RankVector, 3> leading{RankVector{0, 2, 1, 3},
                                          RankVector{1, 2, 0, 3},
                                          RankVector{0, 1, 0, 2}};
  Schedule out;
  out.position.fill(-1);
  for (const auto& r : leading) out.position[encode(r)] = out.count++;
  for (const auto& r : types) {
    if (out.position[encode(r)] < 0) out.position[encode(r)] = out.count++;
  }
  return out;
}

const Schedule& suppression_schedule() {
  static const Schedule schedule = make_schedule();
  return schedule;
}

// ---------------------------------------------------------------------------
// Stage (a): lambda candidates

struct Candidate {
  Complex center;
  Index count = 0;
};

std::vector<Candidate> lambda_candidates(CoefficientReader& coef, Index window,
                                         InterleaveMode mode, double radius,
                                         double side, int max_candidates) {
  const auto cells_per_axis =
      static_cast<long long>(std::ceil(2.0 * radius / side));
  std::map<long long, Index> counts;
  auto add = [&](Complex c) {
    auto cx = static_cast<long long>(std::floor((c.real() + radius) / side));
    auto cy = static_cast<long long>(std::floor((c.imag() + radius) / side));
    cx = std::clamp(cx, 0LL, std::max(0LL, cells_per_axis - 1));
    cy = std::clamp(cy, 0LL, std::max(0LL, cells_per_axis - 1));
    ++counts[cy * cells_per_axis + cx];
  };
  for (Index i = 1; i <= window; ++i) {
    for (Index j = 1; j <= window; ++j) {
      if (i == j && mode == InterleaveMode::kStrict) continue;
      add(coef.diagonal(i, j));
    }
  }
  std::vector<std::pair<long long, Index>> ranked(counts.begin(), counts.end());
  // Most populated first; std::map order already puts lower cell indices first.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<Candidate> out;
  for (const auto& [cell, count] : ranked) {
    if (static_cast<int>(out.size()) >= max_candidates) break;
    const double cx = static_cast<double>(cell % cells_per_axis);
    const double cy = static_cast<double>(cell / cells_per_axis);
    out.push_back({Complex(-radius + (cx + 0.5) * side,
                           -radius + (cy + 0.5) * side),
                   count});
  }
  return out;
}

// Greedy Ramsey extraction for the good/bad colouring: scan indices in
// increasing order and keep each one that is good with everything kept so far.
std::vector<Index> homogeneous_set(CoefficientReader& coef, Index dim,
                                   Complex center, double tau,
                                   InterleaveMode mode, Index cap) {
  std::vector<Index> kept;
  for (Index x = 1; x <= dim && kept.size() < cap; ++x) {
    if (mode == InterleaveMode::kWeak &&
        std::abs(coef.diagonal(x, x) - center) > tau) {
      continue;
    }
    bool good = true;
    for (Index y : kept) {
      if (std::abs(coef.diagonal(y, x) - center) > tau ||
          std::abs(coef.diagonal(x, y) - center) > tau) {
        good = false;
        break;
      }
    }
    if (good) kept.push_back(x);
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Stage (b): off-diagonal suppression

struct Tuple {
  Index i, j, k, l;
};

void suppress(CoefficientReader& coef, const std::vector<Index>& rows,
              const std::vector<Index>& cols, double delta, Index dim,
              std::vector<bool>& removed) {
  const Schedule& schedule = suppression_schedule();
  std::vector<std::vector<Tuple>> violations(
      static_cast<Index>(schedule.count));

  for (Index i : rows) {
    for (Index j : cols) {
      for (Index k : rows) {
        for (Index l : cols) {
          if (i == k && j == l) continue;
          if (std::abs(coef(i, j, k, l)) >= delta) {
            const int pos = schedule.position[encode(rank_vector(i, j, k, l))];
            violations[static_cast<Index>(pos)].push_back({i, j, k, l});
          }
        }
      }
    }
  }

  auto alive = [&](const Tuple& t) {
    return !removed[t.i] && !removed[t.j] && !removed[t.k] && !removed[t.l];
  };
  std::vector<Index> hits(dim + 1);
  for (auto& pass : violations) {
    while (true) {
      std::erase_if(pass, [&](const Tuple& t) { return !alive(t); });
      if (pass.empty()) break;
      std::fill(hits.begin(), hits.end(), 0);
      for (const Tuple& t : pass) {
        std::array<Index, 4> members{t.i, t.j, t.k, t.l};
        std::sort(members.begin(), members.end());
        const auto end = std::unique(members.begin(), members.end());
        for (auto it = members.begin(); it != end; ++it) ++hits[*it];
      }
      Index worst = 0;
      for (Index x = 1; x <= dim; ++x) {
        if (hits[x] > 0 && hits[x] >= hits[worst]) worst = x;
      }
      removed[worst] = true;
    }
  }
}

// ---------------------------------------------------------------------------
// Stage (c): interleaved split

bool alternating_chain(const std::vector<Index>& rows,
                       const std::vector<Index>& cols, Index n,
                       std::vector<Index>& sigma, std::vector<Index>& psi) {
  sigma.clear();
  psi.clear();
  Index last = 0;
  auto r = rows.begin();
  auto c = cols.begin();
  for (Index t = 0; t < n; ++t) {
    r = std::upper_bound(r, rows.end(), last);
    if (r == rows.end()) return false;
    c = std::upper_bound(c, cols.end(), *r);
    if (c == cols.end()) return false;
    sigma.push_back(*r);
    psi.push_back(*c);
    last = *c;
  }
  return true;
}

// ---------------------------------------------------------------------------

struct Attempt {
  bool split = false;
  ExtractionResult result;
};

void evaluate(const MatrixMap& phi, ExtractionResult& r, Complex center,
              const ExtractionBudget& budget) {
  const DenseMatrixMap compressed = compress_map(phi, r.sigma, r.psi);
  const Index n = r.sigma.size();
  Complex mean = 0.0;
  for (Index k = 1; k <= n; ++k) {
    for (Index l = 1; l <= n; ++l) mean += compressed.image_entry(k, l, k, l);
  }
  mean /= static_cast<double>(n * n);

  NormEstimateOptions options;
  options.restarts = budget.restarts;
  options.seed = budget.seed;
  options.check_linearity = false;

  double best = std::numeric_limits<double>::infinity();
  for (Complex lambda : {mean, center}) {
    const DenseMatrixMap diff = compressed.minus_scaled_identity(lambda);
    const double residual = map_trace_norm_lower_bound(diff, options);
    if (residual < best) {
      best = residual;
      r.lambda = lambda;
      r.residual = residual;
      r.residual_upper = diff.norm_upper_bound();
    }
  }
}

}  // namespace

LargeColumnReport count_large_columns(const ComplexMatrix& t, double epsilon,
                                      double slack) {
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (!(slack > 0.0)) throw InputError("slack must be positive");
  LargeColumnReport report;
  for (Index c = 0; c < t.cols(); ++c) {
    double sq = 0.0;
    for (Index r = 0; r < t.rows(); ++r) sq += std::norm(t(r, c));
    if (std::sqrt(sq) > epsilon) report.columns.push_back(c + 1);
  }
  report.operator_norm = t.empty() ? 0.0 : operator_norm(t);
  const double n = static_cast<double>(t.rows());
  report.bound = slack * n * n * n * report.operator_norm *
                 report.operator_norm / (epsilon * epsilon);
  report.bound_holds =
      static_cast<double>(report.columns.size()) <= report.bound;
  return report;
}

DenseMatrixMap compress_map(const MatrixMap& phi, const IndexMap& sigma,
                            const IndexMap& psi) {
  const Index n = sigma.size();
  const Index dim = phi.dim();
  if (psi.size() != n || n == 0) {
    throw InputError("compression needs sigma, psi of equal positive length");
  }
  if (sigma.max() > dim || psi.max() > dim) {
    throw InputError("compression indices exceed the map dimension");
  }
  Eigen::MatrixXcd rep(static_cast<Eigen::Index>(n * n),
                       static_cast<Eigen::Index>(n * n));
  for (Index k = 1; k <= n; ++k) {
    for (Index l = 1; l <= n; ++l) {
      const auto col = static_cast<Eigen::Index>((k - 1) * n + (l - 1));
      if (phi.has_fast_entries()) {
        for (Index a = 1; a <= n; ++a) {
          for (Index b = 1; b <= n; ++b) {
            rep(static_cast<Eigen::Index>((a - 1) * n + (b - 1)), col) =
                phi.image_entry(sigma(k), psi(l), sigma(a), psi(b));
          }
        }
      } else {
        const ComplexMatrix image =
            apply_K(sigma, psi, phi.apply(ComplexMatrix::unit(dim, sigma(k), psi(l))));
        for (Index a = 0; a < n; ++a) {
          for (Index b = 0; b < n; ++b) {
            rep(static_cast<Eigen::Index>(a * n + b), col) = image(a, b);
          }
        }
      }
    }
  }
  return {n, std::move(rep)};
}

ExtractionResult find_scalar_compression(const MatrixMap& phi, Index n,
                                         double epsilon, InterleaveMode mode,
                                         const ExtractionBudget& budget) {
  if (n < 1) throw InputError("target size n must be positive");
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (!(budget.K > 0.0)) throw InputError("budget.K must be positive");
  if (budget.max_candidates < 1) throw InputError("max_candidates must be >= 1");

  const Index dim = phi.dim();
  const bool strict = mode == InterleaveMode::kStrict;
  const Index needed = strict ? 2 * n : n;
  const Index minimum_N = budget.minimum_N == 0 ? needed : budget.minimum_N;
  if (dim < std::max(minimum_N, needed)) {
    throw InputError("map dimension " + std::to_string(dim) +
                     " is below the minimum " +
                     std::to_string(std::max(minimum_N, needed)));
  }
  if (const auto bound = phi.known_norm_bound(); bound && *bound > budget.K * (1 + 1e-12)) {
    throw InputError("map norm exceeds budget.K");
  }
  const Index cap = std::max(budget.max_survivors, needed);
  const Index window = std::min(cap, dim);
  const double side = budget.net_side > 0.0 ? budget.net_side : epsilon / 4.0;

  CoefficientReader coef(phi);
  for (Index i = 1; i <= window; ++i) {
    for (Index j = 1; j <= window; ++j) {
      if (std::abs(coef.diagonal(i, j)) > budget.K * (1 + 1e-12)) {
        throw InputError("coefficient modulus exceeds budget.K");
      }
    }
  }
  const auto candidates = lambda_candidates(coef, window, mode, budget.K, side,
                                            budget.max_candidates);

  const double nd = static_cast<double>(n);
  const double floor_tau = epsilon / (4.0 * std::pow(nd, 6));
  std::vector<double> taus;
  for (double tau = epsilon; tau >= floor_tau; tau /= 2.0) taus.push_back(tau);
  if (taus.empty()) taus.push_back(floor_tau);

  ExtractionResult best;
  best.residual = std::numeric_limits<double>::infinity();
  bool have_best = false;
  int attempts = 0;
  std::string last_failure = "no attempt reached an interleaved split";

  for (const Candidate& candidate : candidates) {
    for (double tau : taus) {
      ++attempts;
      const double delta = std::max(tau / (nd * nd), floor_tau);
      const std::vector<Index> kept =
          homogeneous_set(coef, dim, candidate.center, tau, mode, cap);
      if (kept.size() < needed) {
        last_failure = "homogeneous set exhausted (" +
                       std::to_string(kept.size()) + " < " +
                       std::to_string(needed) + ")";
        continue;
      }

      std::vector<Index> rows;
      std::vector<Index> cols;
      if (strict) {
        for (Index t = 0; t < kept.size(); ++t) {
          (t % 2 == 0 ? rows : cols).push_back(kept[t]);
        }
      } else {
        rows = kept;
        cols = kept;
      }
      std::vector<bool> removed(dim + 1, false);
      suppress(coef, rows, cols, delta, dim, removed);
      std::erase_if(rows, [&](Index x) { return removed[x]; });
      std::erase_if(cols, [&](Index x) { return removed[x]; });

      std::vector<Index> sigma;
      std::vector<Index> psi;
      bool split = false;
      if (strict) {
        split = alternating_chain(rows, cols, n, sigma, psi);
      } else if (rows.size() >= n) {
        sigma.assign(rows.begin(), rows.begin() + static_cast<long>(n));
        psi = sigma;
        split = true;
      }
      if (!split) {
        last_failure = "survivor set exhausted during off-diagonal suppression";
        continue;
      }

      ExtractionResult r;
      r.sigma = IndexMap(sigma);
      r.psi = IndexMap(psi);
      r.mode = mode;
      r.epsilon = epsilon;
      r.tolerance = tau;
      r.delta = delta;
      r.survivors = strict ? rows.size() + cols.size() : rows.size();
      r.budget = budget;
      evaluate(phi, r, candidate.center, budget);
      r.success = r.residual <= epsilon;
      if (!r.success) last_failure = "residual above epsilon";
      if (!have_best || r.residual < best.residual) {
        best = r;
        have_best = true;
      }
      if (r.success) {
        best.attempts = attempts;
        best.failure.clear();
        return best;
      }
    }
  }

  if (!have_best) {
    // Nothing survived; certify the plain odd/even split so the caller still
    // gets a measured residual.
    best = ExtractionResult{};
    if (strict) {
      best.sigma = IndexMap::arithmetic(1, 2, n);
      best.psi = IndexMap::arithmetic(2, 2, n);
    } else {
      best.sigma = IndexMap::identity(n);
      best.psi = best.sigma;
    }
    best.mode = mode;
    best.epsilon = epsilon;
    best.budget = budget;
    evaluate(phi, best,
             candidates.empty() ? Complex(0.0) : candidates.front().center,
             budget);
  }
  best.attempts = attempts;
  best.success = false;
  best.failure = last_failure;
  return best;
}

double certificate_residual(const MatrixMap& phi, const ExtractionResult& r,
                            int restarts, std::uint64_t seed) {
  const Index dim = phi.dim();
  const IndexMap sigma = r.sigma;
  const IndexMap psi = r.psi;
  const Complex lambda = r.lambda;
  // K (Phi - lambda) J is linear on n x n matrices: materialise it with n^2
  // applications of phi and run the ascent on the small representation.
  const Index n = sigma.size();
  const auto nn = static_cast<Eigen::Index>(n * n);
  Eigen::MatrixXcd rep(nn, nn);
  for (Index i = 1; i <= n; ++i) {
    for (Index j = 1; j <= n; ++j) {
      const ComplexMatrix unit = ComplexMatrix::unit(n, i, j);
      const ComplexMatrix image =
          apply_K(sigma, psi, phi.apply(apply_J(sigma, psi, unit, dim))) - lambda * unit;
      const auto col = static_cast<Eigen::Index>((i - 1) * n + (j - 1));
      for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < n; ++l) {
          rep(static_cast<Eigen::Index>(k * n + l), col) = image(k, l);
        }
      }
    }
  }
  return map_trace_norm_lower_bound(DenseMatrixMap(n, std::move(rep)), restarts, seed);
}

DichotomyReport select_invertible(const MatrixMap& phi,
                                  const ExtractionResult& result, int restarts,
                                  std::uint64_t seed) {
  DichotomyReport report;
  const DenseMatrixMap compressed = compress_map(phi, result.sigma, result.psi);
  const Index n = compressed.dim();
  const auto size = static_cast<Eigen::Index>(n * n);

  report.uses_complement = std::abs(result.lambda) < 0.5;
  report.scalar = report.uses_complement ? 1.0 - result.lambda : result.lambda;
  Eigen::MatrixXcd selected = compressed.representation();
  if (report.uses_complement) {
    selected = Eigen::MatrixXcd::Identity(size, size) - selected;
  }

  report.min_diagonal_modulus = std::numeric_limits<double>::infinity();
  for (Eigen::Index d = 0; d < size; ++d) {
    report.min_diagonal_modulus =
        std::min(report.min_diagonal_modulus, std::abs(selected(d, d)));
  }

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(selected);
  report.invertible = lu.isInvertible();
  const double gap = std::abs(report.scalar) - result.residual_upper;
  report.inverse_norm_bound =
      gap > 0.0 ? 1.0 / gap : std::numeric_limits<double>::infinity();
  if (!report.invertible) {
    report.inverse_norm_estimate = std::numeric_limits<double>::infinity();
    report.inverse_error = std::numeric_limits<double>::infinity();
    return report;
  }
  Eigen::MatrixXcd inverse = lu.inverse();
  if (compressed.is_multiplier()) {
    // The inverse of a multiplier is the multiplier of reciprocals.
    inverse.setZero();
    for (Eigen::Index d = 0; d < size; ++d) inverse(d, d) = 1.0 / selected(d, d);
  }
  report.inverse_error =
      (selected * inverse - Eigen::MatrixXcd::Identity(size, size))
          .cwiseAbs()
          .maxCoeff();
  const DenseMatrixMap inverse_map(n, inverse);
  report.inverse_norm_estimate =
      map_trace_norm_lower_bound(inverse_map, restarts, seed);
  return report;
}

std::string certificate_json(const ExtractionResult& r) {
  nlohmann::ordered_json j;
  j["success"] = r.success;
  j["sigma"] = r.sigma.values();
  j["psi"] = r.psi.values();
  j["lambda"] = {r.lambda.real(), r.lambda.imag()};
  j["residual"] = r.residual;
  j["residual_upper"] = r.residual_upper;
  j["mode"] = std::string(to_string(r.mode));
  j["epsilon"] = r.epsilon;
  j["tolerance"] = r.tolerance;
  j["delta"] = r.delta;
  j["survivors"] = r.survivors;
  j["attempts"] = r.attempts;
  if (!r.failure.empty()) j["failure"] = r.failure;
  j["seed"] = r.budget.seed;
  j["budget"] = {{"K", r.budget.K},
                 {"minimum_N", r.budget.minimum_N},
                 {"max_survivors", r.budget.max_survivors},
                 {"net_side", r.budget.net_side},
                 {"max_candidates", r.budget.max_candidates},
                 {"restarts", r.budget.restarts}};
  return j.dump();
}

}  // namespace nestalg
