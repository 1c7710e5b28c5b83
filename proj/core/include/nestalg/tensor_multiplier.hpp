#ifndef NESTALG_TENSOR_MULTIPLIER_HPP_
#define NESTALG_TENSOR_MULTIPLIER_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nestalg/decomposition.hpp"
#include "nestalg/index_maps.hpp"
#include "nestalg/linalg.hpp"

namespace nestalg {

// Bijection between ordered pairs of positive integers and positive
// integers, used to flatten c_1 (x) c_1 onto c_1.
class PairingFunction {
 public:
  // Diagonal enumeration: (1,1), (2,1), (1,2), (3,1), (2,2), (1,3), ...
  static PairingFunction cantor();
  // m <-> ((m - 1) mod period + 1, (m - 1) / period + 1). Within a truncation
  // N <= period every index has its own rank; period 1 gives a single rank.
  static PairingFunction strided(std::uint64_t period);

  std::uint64_t pack(std::uint64_t first, std::uint64_t second) const;
  std::pair<std::uint64_t, std::uint64_t> unpack(std::uint64_t m) const;

  std::string name() const;

 private:
  enum class Kind { kCantor, kStrided };
  PairingFunction(Kind kind, std::uint64_t period) : kind_(kind), period_(period) {}
  Kind kind_;
  std::uint64_t period_;
};

// First coordinate of unpack(m).
std::uint64_t rank_r(const PairingFunction& phi, std::uint64_t m);

// rank -> number of m in 1..N with that rank.
std::map<std::uint64_t, Index> rank_histogram(const PairingFunction& phi,
                                              Index n);

// allowed(i, j) <=> r(i) <= r(j).
NestMask star_diagram_mask(const PairingFunction& phi, Index n);

// For all i, j in 1..|sigma|: r(i) <= r(j) <=> r(sigma(i)) <= r(psi(j)).
bool check_lemma12(const IndexMap& sigma, const IndexMap& psi,
                   const PairingFunction& phi);

// Coefficients lambda_{ijkl}, i <= j in 1..n_outer, k, l in 1..n_inner.
class MultiplierTable {
 public:
  MultiplierTable(Index n_outer, Index n_inner);

  Index n_outer() const { return n_outer_; }
  Index n_inner() const { return n_inner_; }

  // 1-based; throws for i > j.
  Complex at(Index i, Index j, Index k, Index l) const;
  void set(Index i, Index j, Index k, Index l, Complex value);

  friend bool operator==(const MultiplierTable&, const MultiplierTable&) = default;

 private:
  Index offset(Index i, Index j, Index k, Index l) const;
  Index n_outer_;
  Index n_inner_;
  std::vector<Complex> values_;
};

// "mtab v1": header `n_outer n_inner`, then lines `i j k l re im`.
// Missing entries default to zero; i > j and duplicates are rejected.
void write_mtab(std::ostream& out, const MultiplierTable& table);
MultiplierTable read_mtab(std::istream& in);
void save_mtab(const std::filesystem::path& path, const MultiplierTable& table);
MultiplierTable load_mtab(const std::filesystem::path& path);

enum class MultiplierClass { kScalar, kUnboundedWitness, kIdentityFactor };
std::string_view to_string(MultiplierClass c);

struct TailLimits {
  // Indexed [i][j] with 0-based i <= j; unused for i > j.
  std::vector<std::vector<Complex>> upper;  // lambda_ij  (l then k limit)
  std::vector<std::vector<Complex>> lower;  // lambdabar_ij (k then l limit)
};

struct MultiplierClassification {
  MultiplierClass kind = MultiplierClass::kScalar;
  TailLimits limits;
  Complex lambda = 0.0;          // average of the upper limits
  bool near_one = false;         // |1 - lambda| <= 2 eps
  bool near_constant = false;    // every coefficient within eps of lambda
  Index agreement_violations = 0;  // pairs with |lambda_ij - lambda| >= eps(2^-i + 2^-j)

  // Unbounded witness: the (i, j) block with the largest limit gap.
  Index witness_i = 0;
  Index witness_j = 0;
  Complex witness_lower = 0.0;   // value strictly below the diagonal
  Complex witness_upper = 0.0;   // value on and above it
  std::vector<std::pair<Index, double>> growth;  // (N, schur_pattern_growth)

  // Identity factor: |lambda_{i j sigma(i) psi(j)}| >= 1/2 for all i <= j.
  std::optional<IndexMap> sigma;
  std::optional<IndexMap> psi;

  // First-row diagnostic: for each k, count of j with at least half of the
  // l-range satisfying |lambda_{1jkl}| >= 1/2.
  std::vector<Index> first_row_counts;
};

// Last-quartile averages stand in for the iterated limits.
TailLimits tail_limits(const MultiplierTable& table);

// Rejects tables with any dimension below 8.
MultiplierClassification classify_multiplier_table(const MultiplierTable& table,
                                                   double epsilon,
                                                   Index growth_budget);

}  // namespace nestalg

#endif  // NESTALG_TENSOR_MULTIPLIER_HPP_
