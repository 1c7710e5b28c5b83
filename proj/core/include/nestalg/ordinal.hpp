#ifndef NESTALG_ORDINAL_HPP_
#define NESTALG_ORDINAL_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nestalg {

struct OrdinalTerm;

// Ordinal below epsilon_0 in Cantor normal form:
//   w^e_1 * c_1 + ... + w^e_k * c_k,  e_1 > ... > e_k,  c_t >= 1.
// The empty sum is 0. Instances are always canonical.
class Ordinal {
 public:
  Ordinal() = default;  // zero
  explicit Ordinal(std::uint64_t finite);

  static Ordinal omega() { return omega_power(Ordinal(1)); }
  // w^exponent * coefficient.
  static Ordinal omega_power(const Ordinal& exponent,
                             std::uint64_t coefficient = 1);
  // Builds from terms, validating canonicity.
  static Ordinal from_terms(std::vector<OrdinalTerm> terms);

  const std::vector<OrdinalTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  // Value of a finite ordinal; throws otherwise.
  std::uint64_t finite_value() const;
  bool is_successor() const;
  bool is_limit() const { return !is_zero() && !is_successor(); }
  // Number of nested exponent levels; 0 for finite ordinals.
  int height() const;

  const Ordinal& leading_exponent() const;

 private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 1;
};

std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b);
bool operator==(const Ordinal& a, const Ordinal& b);
inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  return ord_cmp(a, b);
}

Ordinal ord_add(const Ordinal& a, const Ordinal& b);
Ordinal ord_mul(const Ordinal& a, const Ordinal& b);
Ordinal operator+(const Ordinal& a, const Ordinal& b);
Ordinal operator*(const Ordinal& a, const Ordinal& b);

// a^w: w for finite a >= 2, w^(e_1 * w) for infinite a. Rejects a <= 1.
Ordinal ord_pow_omega(const Ordinal& a);

// a^b for the supported cases: b finite, a = w, or b = w.
Ordinal ord_pow(const Ordinal& a, const Ordinal& b);

// With alpha = min(a, b) and beta = max(a, b): w^2 <= alpha <= beta < alpha^w.
bool prop7_applies(const Ordinal& a, const Ordinal& b);

// Canonical text, e.g. "w^2*3+w*5+7", "w^(w+1)", "0".
std::string to_string(const Ordinal& a);

// Evaluates an expression over w, non-negative integers, +, *, ^
// (right-associative) and parentheses.
Ordinal parse_ordinal_expression(std::string_view text);

// Accepts only canonical CNF text (whitespace ignored); anything else is
// rejected with the canonical spelling as a hint when it can be evaluated.
Ordinal parse_ordinal(std::string_view text);

}  // namespace nestalg

#endif  // NESTALG_ORDINAL_HPP_
