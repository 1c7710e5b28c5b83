#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

std::vector<double> jacobi_singular_values(const ComplexMatrix& a) {
  const Index m = a.rows();
  const Index n = a.cols();
  // Work on the wider orientation so that the column count is the smaller one.
  const bool flip = n > m;
  const Index rows = flip ? n : m;
  const Index cols = flip ? m : n;
  std::vector<std::vector<Complex>> c(cols, std::vector<Complex>(rows));
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (flip) {
        c[i][j] = std::conj(a(i, j));
      } else {
        c[j][i] = a(i, j);
      }
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p + 1 < cols; ++p) {
      for (Index q = p + 1; q < cols; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma = 0.0;
        for (Index r = 0; r < rows; ++r) {
          alpha += std::norm(c[p][r]);
          beta += std::norm(c[q][r]);
          gamma += std::conj(c[p][r]) * c[q][r];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        off = std::max(off, g / std::sqrt(alpha * beta));
        const Complex phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (Index r = 0; r < rows; ++r) {
          const Complex x = c[p][r];
          const Complex y = c[q][r] * std::conj(phase);
          c[p][r] = cs * x - sn * y;
          c[q][r] = (sn * x + cs * y) * phase;
        }
      }
    }
    if (off < 1e-15) break;
  }
  std::vector<double> s(cols);
  for (Index j = 0; j < cols; ++j) {
    double sum = 0.0;
    for (Index r = 0; r < rows; ++r) sum += std::norm(c[j][r]);
    s[j] = std::sqrt(sum);
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

double jacobi_trace_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (double s : jacobi_singular_values(a)) sum += s;
  return sum;
}

std::vector<double> triu_ones_singular_values(Index n) {
  std::vector<double> s;
  for (Index k = 1; k <= n; ++k) {
    const double angle = (2.0 * static_cast<double>(k) - 1.0) * std::numbers::pi /
                         (4.0 * static_cast<double>(n) + 2.0);
    s.push_back(1.0 / (2.0 * std::sin(angle)));
  }
  return s;
}

double triu_ones_growth(Index n) {
  double sum = 0.0;
  for (double s : triu_ones_singular_values(n)) sum += s;
  return sum / static_cast<double>(n);
}

std::vector<Index> large_columns(const ComplexMatrix& t, double epsilon) {
  std::vector<Index> out;
  for (Index j = 0; j < t.cols(); ++j) {
    double sum = 0.0;
    for (Index i = 0; i < t.rows(); ++i) sum += std::norm(t(i, j));
    if (std::sqrt(sum) > epsilon) out.push_back(j + 1);
  }
  return out;
}

namespace {

void extend_clique(const std::vector<std::vector<bool>>& adj,
                   std::vector<Index>& current, std::vector<Index> candidates,
                   std::vector<Index>& best) {
  if (current.size() > best.size()) best = current;
  if (current.size() + candidates.size() <= best.size()) return;
  while (!candidates.empty()) {
    const Index v = candidates.back();
    candidates.pop_back();
    std::vector<Index> next;
    for (Index u : candidates) {
      if (adj[v][u]) next.push_back(u);
    }
    current.push_back(v);
    extend_clique(adj, current, next, best);
    current.pop_back();
    if (current.size() + candidates.size() <= best.size()) return;
  }
}

}  // namespace

std::vector<Index> largest_bad_clique(const ComplexMatrix& x, double delta) {
  const Index n = x.rows();
  std::vector<Index> touched;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(x(i, j)) >= delta) {
        adj[i][j] = adj[j][i] = true;
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (std::find(adj[i].begin(), adj[i].end(), true) != adj[i].end()) {
      touched.push_back(i);
    }
  }
  std::vector<Index> best;
  if (n > 0) best.push_back(0);  // any single index is trivially a clique
  std::vector<Index> current;
  extend_clique(adj, current, touched, best);
  for (Index& v : best) ++v;
  std::sort(best.begin(), best.end());
  return best;
}

UnaryOrdinal to_unary(const nestalg::Ordinal& a) {
  UnaryOrdinal out;
  for (const auto& term : a.terms()) {
    const UnaryOrdinal e = to_unary(term.exponent);
    for (std::uint64_t c = 0; c < term.coefficient; ++c) out.exponents.push_back(e);
  }
  return out;
}

int compare(const UnaryOrdinal& a, const UnaryOrdinal& b) {
  const std::size_t n = std::min(a.exponents.size(), b.exponents.size());
  for (std::size_t t = 0; t < n; ++t) {
    const int c = compare(a.exponents[t], b.exponents[t]);
    if (c != 0) return c;
  }
  if (a.exponents.size() == b.exponents.size()) return 0;
  return a.exponents.size() < b.exponents.size() ? -1 : 1;
}

bool equal(const UnaryOrdinal& a, const UnaryOrdinal& b) { return compare(a, b) == 0; }

UnaryOrdinal add(const UnaryOrdinal& a, const UnaryOrdinal& b) {
  if (b.exponents.empty()) return a;
  UnaryOrdinal out;
  for (const auto& e : a.exponents) {
    if (compare(e, b.exponents.front()) >= 0) out.exponents.push_back(e);
  }
  out.exponents.insert(out.exponents.end(), b.exponents.begin(), b.exponents.end());
  return out;
}

UnaryOrdinal multiply(const UnaryOrdinal& a, const UnaryOrdinal& b) {
  UnaryOrdinal out;
  if (a.exponents.empty()) return out;
  for (const auto& e : b.exponents) {
    if (e.exponents.empty()) {
      out = add(out, a);  // a * 1
    } else {
      out = add(out, UnaryOrdinal{{add(a.exponents.front(), e)}});
    }
  }
  return out;
}

nestalg::Ordinal random_ordinal(std::mt19937_64& rng, int height) {
  if (height <= 0) return nestalg::Ordinal(std::uniform_int_distribution<int>(0, 5)(rng));
  const int count = std::uniform_int_distribution<int>(1, 3)(rng);
  std::vector<nestalg::Ordinal> exps;
  for (int t = 0; t < count; ++t) exps.push_back(random_ordinal(rng, height - 1));
  // Nudge exponent towards infinite values so heights are actually reached.
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
    exps.push_back(
        nestalg::Ordinal::omega_power(random_ordinal(rng, std::max(0, height - 2))));
  }
  std::sort(exps.begin(), exps.end(), [](const auto& x, const auto& y) { return x > y; });
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<nestalg::OrdinalTerm> terms;
  for (auto& e : exps) {
    terms.push_back({e, static_cast<std::uint64_t>(
                            std::uniform_int_distribution<int>(1, 3)(rng))});
  }
  return nestalg::Ordinal::from_terms(std::move(terms));
}

nestalg::IndexMap random_index_map(std::mt19937_64& rng, Index n, Index N) {
  std::vector<Index> all(N);
  for (Index i = 0; i < N; ++i) all[i] = i + 1;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(n);
  std::sort(all.begin(), all.end());
  return nestalg::IndexMap(all);
}

}  // namespace oracle
