#include "nestalg/tensor_multiplier.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "nestalg/errors.hpp"
#include "nestalg/matrix_io.hpp"

namespace nestalg {

// ---------------------------------------------------------------------------
// Pairing

PairingFunction PairingFunction::cantor() { return {Kind::kCantor, 0}; }

PairingFunction PairingFunction::strided(std::uint64_t period) {
  if (period == 0) throw InputError("strided pairing needs a positive period");
  return {Kind::kStrided, period};
}

std::uint64_t PairingFunction::pack(std::uint64_t first,
                                    std::uint64_t second) const {
  if (first < 1 || second < 1) throw InputError("pairing arguments are 1-based");
  if (kind_ == Kind::kStrided) {
    if (first > period_) throw InputError("first coordinate exceeds the period");
    return (second - 1) * period_ + first;
  }
  const std::uint64_t d = first + second - 2;  // 0-based anti-diagonal
  return d * (d + 1) / 2 + second;
}

std::pair<std::uint64_t, std::uint64_t> PairingFunction::unpack(
    std::uint64_t m) const {
  if (m < 1) throw InputError("pairing indices are 1-based");
  if (kind_ == Kind::kStrided) {
    return {(m - 1) % period_ + 1, (m - 1) / period_ + 1};
  }
  // Largest d with d(d+1)/2 < m.
  auto d = static_cast<std::uint64_t>(
      (std::sqrt(8.0 * static_cast<double>(m - 1) + 1.0) - 1.0) / 2.0);
  while (d * (d + 1) / 2 >= m) --d;
  while ((d + 1) * (d + 2) / 2 < m) ++d;
  const std::uint64_t second = m - d * (d + 1) / 2;
  return {d + 2 - second, second};
}

std::string PairingFunction::name() const {
  return kind_ == Kind::kCantor ? "cantor"
                                : "strided:" + std::to_string(period_);
}

std::uint64_t rank_r(const PairingFunction& phi, std::uint64_t m) {
  return phi.unpack(m).first;
}

std::map<std::uint64_t, Index> rank_histogram(const PairingFunction& phi,
                                              Index n) {
  std::map<std::uint64_t, Index> out;
  for (Index m = 1; m <= n; ++m) ++out[rank_r(phi, m)];
  return out;
}

NestMask star_diagram_mask(const PairingFunction& phi, Index n) {
  std::vector<std::int64_t> labels(n);
  for (Index m = 1; m <= n; ++m) {
    labels[m - 1] = static_cast<std::int64_t>(rank_r(phi, m));
  }
  return NestMask::from_labels(labels);
}

bool check_lemma12(const IndexMap& sigma, const IndexMap& psi,
                   const PairingFunction& phi) {
  if (sigma.size() != psi.size()) {
    throw InputError("check_lemma12 needs sigma and psi of equal length");
  }
  const Index n = sigma.size();
  for (Index i = 1; i <= n; ++i) {
    for (Index j = 1; j <= n; ++j) {
      const bool before = rank_r(phi, i) <= rank_r(phi, j);
      const bool after = rank_r(phi, sigma(i)) <= rank_r(phi, psi(j));
      if (before != after) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Multiplier tables

MultiplierTable::MultiplierTable(Index n_outer, Index n_inner)
    : n_outer_(n_outer),
      n_inner_(n_inner),
      values_(n_outer * n_outer * n_inner * n_inner) {
  if (n_outer == 0 || n_inner == 0) {
    throw InputError("multiplier table dimensions must be positive");
  }
}

Index MultiplierTable::offset(Index i, Index j, Index k, Index l) const {
  if (i < 1 || j < 1 || k < 1 || l < 1 || i > n_outer_ || j > n_outer_ ||
      k > n_inner_ || l > n_inner_) {
    throw InputError("multiplier table index out of range");
  }
  if (i > j) throw InputError("multiplier table is defined only for i <= j");
  return (((i - 1) * n_outer_ + (j - 1)) * n_inner_ + (k - 1)) * n_inner_ +
         (l - 1);
}

Complex MultiplierTable::at(Index i, Index j, Index k, Index l) const {
  return values_[offset(i, j, k, l)];
}

void MultiplierTable::set(Index i, Index j, Index k, Index l, Complex value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw InputError("multiplier coefficient is not finite");
  }
  values_[offset(i, j, k, l)] = value;
}

void write_mtab(std::ostream& out, const MultiplierTable& table) {
  out << table.n_outer() << ' ' << table.n_inner() << '\n';
  for (Index i = 1; i <= table.n_outer(); ++i) {
    for (Index j = i; j <= table.n_outer(); ++j) {
      for (Index k = 1; k <= table.n_inner(); ++k) {
        for (Index l = 1; l <= table.n_inner(); ++l) {
          const Complex z = table.at(i, j, k, l);
          out << i << ' ' << j << ' ' << k << ' ' << l << ' '
              << format_double(z.real()) << ' ' << format_double(z.imag())
              << '\n';
        }
      }
    }
  }
}

MultiplierTable read_mtab(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("mtab: missing header line");
  std::istringstream header(line);
  Index n_outer = 0;
  Index n_inner = 0;
  std::string extra;
  if (!(header >> n_outer >> n_inner) || (header >> extra)) {
    throw FormatError("mtab: header must be 'n_outer n_inner'");
  }
  if (n_outer == 0 || n_inner == 0) {
    throw FormatError("mtab: dimensions must be positive");
  }
  MultiplierTable table(n_outer, n_inner);
  std::set<std::array<Index, 4>> seen;
  Index line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string part; fields >> part;) parts.push_back(part);
    if (parts.empty()) continue;
    if (parts.size() != 6) {
      throw FormatError("mtab: line " + std::to_string(line_no) +
                        " must hold 'i j k l re im'");
    }
    std::array<Index, 4> idx{};
    for (int t = 0; t < 4; ++t) {
      const std::string& p = parts[static_cast<Index>(t)];
      const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), idx[t]);
      if (ec != std::errc() || ptr != p.data() + p.size() || idx[t] == 0) {
        throw FormatError("mtab: line " + std::to_string(line_no) +
                          ": bad index '" + p + "'");
      }
    }
    if (idx[0] > idx[1]) {
      throw FormatError("mtab: line " + std::to_string(line_no) +
                        ": entries need i <= j");
    }
    if (idx[0] > n_outer || idx[1] > n_outer || idx[2] > n_inner ||
        idx[3] > n_inner) {
      throw FormatError("mtab: line " + std::to_string(line_no) +
                        ": index out of range");
    }
    if (!seen.insert(idx).second) {
      throw FormatError("mtab: line " + std::to_string(line_no) +
                        ": duplicate entry");
    }
    table.set(idx[0], idx[1], idx[2], idx[3],
              {parse_double(parts[4]), parse_double(parts[5])});
  }
  return table;
}

void save_mtab(const std::filesystem::path& path, const MultiplierTable& table) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_mtab(out, table);
}

MultiplierTable load_mtab(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_mtab(in);
}

// ---------------------------------------------------------------------------
// Classification

std::string_view to_string(MultiplierClass c) {
  switch (c) {
    case MultiplierClass::kScalar: return "scalar";
    case MultiplierClass::kUnboundedWitness: return "unbounded-witness";
    case MultiplierClass::kIdentityFactor: return "identity-factor";
  }
  return "unknown";
}

namespace {

struct Quartiles {
  Index last_begin;   // first index of the last quartile
  Index last_end;     // = n
  Index inner_begin;  // quartile just before it
  Index inner_end;
};

Quartiles quartiles(Index n) {
  const Index q = std::max<Index>(1, n / 4);
  return {n - q + 1, n, n - 2 * q + 1, n - q};
}

bool find_identity_factor(const MultiplierTable& table, std::vector<Index>& sigma,
                          std::vector<Index>& psi, std::size_t& budget) {
  const Index n = table.n_outer();
  const Index m = table.n_inner();
  // Positions are assigned sigma(1), psi(1), sigma(2), psi(2), ...; assigning
  // psi(j) closes every constraint (i, j) with i <= j.
  const Index depth = sigma.size() + psi.size();
  if (depth == 2 * n) return true;
  if (budget == 0) return false;
  --budget;
  const bool choosing_sigma = sigma.size() == psi.size();
  if (choosing_sigma) {
    const Index start = sigma.empty() ? 1 : sigma.back() + 1;
    for (Index s = start; s + (n - sigma.size() - 1) <= m; ++s) {
      sigma.push_back(s);
      if (find_identity_factor(table, sigma, psi, budget)) return true;
      sigma.pop_back();
    }
    return false;
  }
  const Index j = psi.size() + 1;
  const Index start = psi.empty() ? 1 : psi.back() + 1;
  for (Index p = start; p + (n - j) <= m; ++p) {
    bool ok = true;
    for (Index i = 1; i <= j && ok; ++i) {
      ok = std::abs(table.at(i, j, sigma[i - 1], p)) >= 0.5;
    }
    if (!ok) continue;
    psi.push_back(p);
    if (find_identity_factor(table, sigma, psi, budget)) return true;
    psi.pop_back();
  }
  return false;
}

}  // namespace

TailLimits tail_limits(const MultiplierTable& table) {
  const Index n = table.n_outer();
  const Index m = table.n_inner();
  const Quartiles q = quartiles(m);
  TailLimits out;
  out.upper.assign(n, std::vector<Complex>(n));
  out.lower.assign(n, std::vector<Complex>(n));
  const double outer_count = static_cast<double>(q.last_end - q.last_begin + 1);
  const double inner_count = static_cast<double>(q.inner_end - q.inner_begin + 1);
  for (Index i = 1; i <= n; ++i) {
    for (Index j = i; j <= n; ++j) {
      // The inner limit runs further out than the outer one, so l >> k for
      // the upper limit and k >> l for the lower one.
      Complex upper = 0.0;
      Complex lower = 0.0;
      for (Index a = q.inner_begin; a <= q.inner_end; ++a) {
        Complex row = 0.0;
        Complex col = 0.0;
        for (Index b = q.last_begin; b <= q.last_end; ++b) {
          row += table.at(i, j, a, b);
          col += table.at(i, j, b, a);
        }
        upper += row / outer_count;
        lower += col / outer_count;
      }
      out.upper[i - 1][j - 1] = upper / inner_count;
      out.lower[i - 1][j - 1] = lower / inner_count;
    }
  }
  return out;
}

MultiplierClassification classify_multiplier_table(const MultiplierTable& table,
                                                   double epsilon,
                                                   Index growth_budget) {
  if (table.n_outer() < 8 || table.n_inner() < 8) {
    throw InputError(
        "multiplier table too small for quartile estimates: every dimension "
        "must be at least 8");
  }
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (growth_budget < 1) throw InputError("growth budget must be positive");

  const Index n = table.n_outer();
  const Index m = table.n_inner();
  MultiplierClassification out;
  out.limits = tail_limits(table);

  // Upper and lower limits must agree.
  double worst_gap = 0.0;
  for (Index i = 1; i <= n; ++i) {
    for (Index j = i; j <= n; ++j) {
      const double gap =
          std::abs(out.limits.upper[i - 1][j - 1] - out.limits.lower[i - 1][j - 1]);
      if (gap > epsilon && gap > worst_gap) {
        worst_gap = gap;
        out.witness_i = i;
        out.witness_j = j;
      }
    }
  }

  Complex sum = 0.0;
  for (Index i = 1; i <= n; ++i) {
    for (Index j = i; j <= n; ++j) sum += out.limits.upper[i - 1][j - 1];
  }
  out.lambda = sum / static_cast<double>(n * (n + 1) / 2);
  out.near_one = std::abs(1.0 - out.lambda) <= 2.0 * epsilon;
  for (Index i = 1; i <= n; ++i) {
    for (Index j = i; j <= n; ++j) {
      const double weight = epsilon * (std::ldexp(1.0, -static_cast<int>(i)) +
                                       std::ldexp(1.0, -static_cast<int>(j)));
      if (std::abs(out.limits.upper[i - 1][j - 1] - out.lambda) >= weight) {
        ++out.agreement_violations;
      }
    }
  }

  out.first_row_counts.assign(m, 0);
  for (Index k = 1; k <= m; ++k) {
    for (Index j = 1; j <= n; ++j) {
      Index big = 0;
      for (Index l = 1; l <= m; ++l) big += std::abs(table.at(1, j, k, l)) >= 0.5;
      if (2 * big >= m) ++out.first_row_counts[k - 1];
    }
  }

  if (out.witness_i != 0) {
    out.kind = MultiplierClass::kUnboundedWitness;
    out.witness_lower = out.limits.lower[out.witness_i - 1][out.witness_j - 1];
    out.witness_upper = out.limits.upper[out.witness_i - 1][out.witness_j - 1];
    std::set<Index> sizes{16, 64, growth_budget};
    for (Index size : sizes) {
      out.growth.emplace_back(
          size, schur_pattern_growth(out.witness_lower, out.witness_upper, size));
    }
    return out;
  }

  out.near_constant = true;
  for (Index i = 1; i <= n && out.near_constant; ++i) {
    for (Index j = i; j <= n && out.near_constant; ++j) {
      for (Index k = 1; k <= m && out.near_constant; ++k) {
        for (Index l = 1; l <= m; ++l) {
          if (std::abs(table.at(i, j, k, l) - out.lambda) > epsilon) {
            out.near_constant = false;
            break;
          }
        }
      }
    }
  }
  if (out.near_constant) {
    out.kind = MultiplierClass::kScalar;
    return out;
  }

  std::vector<Index> sigma;
  std::vector<Index> psi;
  std::size_t budget = 1'000'000;
  if (find_identity_factor(table, sigma, psi, budget)) {
    out.kind = MultiplierClass::kIdentityFactor;
    out.sigma = IndexMap(sigma);
    out.psi = IndexMap(psi);
  } else {
    out.kind = MultiplierClass::kScalar;
  }
  return out;
}

}  // namespace nestalg
