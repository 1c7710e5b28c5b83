#include "nestalg/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

#include "nestalg/errors.hpp"

namespace nestalg {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw InputError("ordinal coefficient overflow");
  }
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw InputError("ordinal coefficient overflow");
  }
  return a * b;
}

const Ordinal& zero_ordinal() {
  static const Ordinal z;
  return z;
}

}  // namespace

Ordinal::Ordinal(std::uint64_t finite) {
  if (finite > 0) terms_.push_back({Ordinal(), finite});
}

Ordinal Ordinal::omega_power(const Ordinal& exponent, std::uint64_t coefficient) {
  Ordinal out;
  if (coefficient > 0) out.terms_.push_back({exponent, coefficient});
  return out;
}

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (terms[t].coefficient == 0) {
      throw InputError("CNF coefficients must be positive");
    }
    if (t > 0 && !(terms[t].exponent < terms[t - 1].exponent)) {
      throw InputError("CNF exponents must be strictly decreasing");
    }
  }
  Ordinal out;
  out.terms_ = std::move(terms);
  return out;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::uint64_t Ordinal::finite_value() const {
  if (!is_finite()) throw InputError("ordinal " + to_string(*this) + " is infinite");
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

bool Ordinal::is_successor() const {
  return !terms_.empty() && terms_.back().exponent.is_zero();
}

int Ordinal::height() const {
  int h = 0;
  for (const auto& term : terms_) {
    if (!term.exponent.is_zero()) h = std::max(h, 1 + term.exponent.height());
  }
  return h;
}

const Ordinal& Ordinal::leading_exponent() const {
  return terms_.empty() ? zero_ordinal() : terms_[0].exponent;
}

std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t t = 0; t < n; ++t) {
    if (auto c = ord_cmp(x[t].exponent, y[t].exponent); c != 0) return c;
    if (auto c = x[t].coefficient <=> y[t].coefficient; c != 0) return c;
  }
  return x.size() <=> y.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return ord_cmp(a, b) == 0; }

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.leading_exponent();
  std::vector<OrdinalTerm> terms;
  for (const auto& term : a.terms()) {
    if (term.exponent > lead) terms.push_back(term);
  }
  auto rest = b.terms();
  for (const auto& term : a.terms()) {
    if (term.exponent == lead) {
      rest[0].coefficient = checked_add(term.coefficient, rest[0].coefficient);
    }
  }
  terms.insert(terms.end(), rest.begin(), rest.end());
  return Ordinal::from_terms(std::move(terms));
}

Ordinal ord_mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  const auto& lead = a.terms()[0];
  Ordinal out;
  // Left distributivity over the terms of b.
  for (const auto& term : b.terms()) {
    Ordinal piece;
    if (term.exponent.is_zero()) {
      // a * c: only the leading coefficient is multiplied.
      std::vector<OrdinalTerm> terms = a.terms();
      terms[0].coefficient = checked_mul(lead.coefficient, term.coefficient);
      piece = Ordinal::from_terms(std::move(terms));
    } else {
      piece = Ordinal::omega_power(ord_add(lead.exponent, term.exponent),
                                   term.coefficient);
    }
    out = ord_add(out, piece);
  }
  return out;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) { return ord_add(a, b); }
Ordinal operator*(const Ordinal& a, const Ordinal& b) { return ord_mul(a, b); }

Ordinal ord_pow_omega(const Ordinal& a) {
  if (a <= Ordinal(1)) {
    throw InputError("a^w needs a >= 2; got " + to_string(a));
  }
  if (a.is_finite()) return Ordinal::omega();
  return Ordinal::omega_power(ord_mul(a.leading_exponent(), Ordinal::omega()));
}

Ordinal ord_pow(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return Ordinal(1);
  if (a == Ordinal::omega()) return Ordinal::omega_power(b);
  if (b.is_finite()) {
    Ordinal out(1);
    for (std::uint64_t t = 0; t < b.finite_value(); ++t) out = ord_mul(out, a);
    return out;
  }
  if (a.is_zero()) return Ordinal();
  if (a == Ordinal(1)) return Ordinal(1);
  if (b == Ordinal::omega()) return ord_pow_omega(a);
  throw InputError("unsupported exponentiation " + to_string(a) + "^" +
                   to_string(b) + ": exponents must be finite or w unless the base is w");
}

bool prop7_applies(const Ordinal& a, const Ordinal& b) {
  const Ordinal& alpha = a <= b ? a : b;
  const Ordinal& beta = a <= b ? b : a;
  const Ordinal omega_squared = Ordinal::omega_power(Ordinal(2));
  if (alpha < omega_squared) return false;
  return beta < ord_pow_omega(alpha);
}

namespace {

std::string exponent_text(const Ordinal& e) {
  if (e.is_finite()) return std::to_string(e.finite_value());
  if (e.terms().size() == 1 && e.terms()[0].coefficient == 1) return to_string(e);
  return "(" + to_string(e) + ")";
}

}  // namespace

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& term : a.terms()) {
    if (!out.empty()) out += '+';
    if (term.exponent.is_zero()) {
      out += std::to_string(term.coefficient);
      continue;
    }
    out += term.exponent == Ordinal(1) ? "w" : "w^" + exponent_text(term.exponent);
    if (term.coefficient > 1) out += "*" + std::to_string(term.coefficient);
  }
  return out;
}

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Ordinal parse() {
    Ordinal value = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("ordinal expression '" + std::string(text_) + "': " + what +
                     " at position " + std::to_string(pos_ + 1));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Ordinal sum() {
    Ordinal value = product();
    while (accept('+')) value = ord_add(value, product());
    return value;
  }

  Ordinal product() {
    Ordinal value = power();
    while (accept('*')) value = ord_mul(value, power());
    return value;
  }

  Ordinal power() {
    Ordinal base = atom();
    if (accept('^')) return ord_pow(base, power());
    return base;
  }

  Ordinal atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == 'w') {
      ++pos_;
      return Ordinal::omega();
    }
    if (c == '(') {
      ++pos_;
      Ordinal value = sum();
      if (!accept(')')) fail("missing ')'");
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      const char* first = text_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), v);
      if (ec != std::errc()) fail("integer out of range");
      pos_ += static_cast<std::size_t>(ptr - first);
      return Ordinal(v);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal_expression(std::string_view text) {
  return ExpressionParser(text).parse();
}

Ordinal parse_ordinal(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  const Ordinal value = parse_ordinal_expression(compact);
  const std::string canonical = to_string(value);
  if (canonical != compact) {
    throw InputError("ordinal '" + std::string(text) +
                     "' is not in Cantor normal form; write it as '" + canonical +
                     "'");
  }
  return value;
}

}  // namespace nestalg
