#include <gtest/gtest.h>

#include "nestalg/errors.hpp"
#include "nestalg/ordinal.hpp"
#include "oracles.hpp"

namespace nestalg {
namespace {

const Ordinal w = Ordinal::omega();

Ordinal P(std::string_view text) { return parse_ordinal_expression(text); }

TEST(Ordinal, PrintsCanonically) {
  EXPECT_EQ(to_string(Ordinal()), "0");
  EXPECT_EQ(to_string(Ordinal(7)), "7");
  EXPECT_EQ(to_string(w), "w");
  EXPECT_EQ(to_string(P("w^2*3+w*5+7")), "w^2*3+w*5+7");
  EXPECT_EQ(to_string(Ordinal::omega_power(w + Ordinal(1))), "w^(w+1)");
  EXPECT_EQ(to_string(Ordinal::omega_power(w * Ordinal(2))), "w^(w*2)");
  EXPECT_EQ(to_string(Ordinal::omega_power(Ordinal::omega_power(Ordinal(2)))), "w^w^2");
  EXPECT_EQ(P("w^w^2"), Ordinal::omega_power(Ordinal::omega_power(Ordinal(2))));
}

TEST(Ordinal, AbsorptionAndNonCommutativity) {
  EXPECT_EQ(Ordinal(2) * w, w);
  EXPECT_EQ(w * Ordinal(2), w + w);
  EXPECT_NE(w * Ordinal(2), w);
  EXPECT_EQ(Ordinal(1) + w, w);
  EXPECT_NE(w + Ordinal(1), w);
  EXPECT_EQ(w * Ordinal::omega_power(w), Ordinal::omega_power(w));
}

TEST(Ordinal, DistributedProductMatchesUnaryOracle) {
  const Ordinal a = P("w^w*3+w^2");
  const Ordinal direct = w * a;
  const Ordinal distributed = w * P("w^w*3") + w * P("w^2");
  EXPECT_EQ(direct, distributed);
  EXPECT_EQ(to_string(direct), "w^w*3+w^3");
  EXPECT_TRUE(oracle::equal(oracle::to_unary(direct),
                            oracle::multiply(oracle::to_unary(w), oracle::to_unary(a))));
}

TEST(Ordinal, ArithmeticAgreesWithUnaryOracle) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const Ordinal a = oracle::random_ordinal(rng, 1 + trial % 3);
    const Ordinal b = oracle::random_ordinal(rng, 1 + (trial / 3) % 3);
    const auto ua = oracle::to_unary(a);
    const auto ub = oracle::to_unary(b);
    EXPECT_TRUE(oracle::equal(oracle::to_unary(a + b), oracle::add(ua, ub)));
    EXPECT_TRUE(oracle::equal(oracle::to_unary(a * b), oracle::multiply(ua, ub)));
    const int c = oracle::compare(ua, ub);
    const auto lib = ord_cmp(a, b);
    EXPECT_EQ(c < 0, lib < 0);
    EXPECT_EQ(c == 0, lib == 0);
  }
}

TEST(Ordinal, AlgebraicLaws) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Ordinal a = oracle::random_ordinal(rng, 2);
    const Ordinal b = oracle::random_ordinal(rng, 2);
    const Ordinal c = oracle::random_ordinal(rng, 2);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_LE(a, a + b);
  }
}

TEST(Ordinal, OmegaTimesAlphaBelowAlphaTimesOmega) {
  std::mt19937_64 rng(4);
  int checked = 0;
  while (checked < 100) {
    const Ordinal a = oracle::random_ordinal(rng, 3);
    if (a < Ordinal::omega_power(w)) continue;
    EXPECT_LT(w * a, a * w) << to_string(a);
    ++checked;
  }
}

TEST(Ordinal, PowOmega) {
  EXPECT_EQ(ord_pow_omega(Ordinal(2)), w);
  EXPECT_EQ(ord_pow_omega(P("w^2")), Ordinal::omega_power(w));
  EXPECT_EQ(ord_pow_omega(P("w^w")), P("w^w^2"));
  EXPECT_EQ(ord_pow_omega(P("w^2*5+3")), Ordinal::omega_power(w));
  EXPECT_THROW(ord_pow_omega(Ordinal(1)), InputError);
  EXPECT_THROW(ord_pow_omega(Ordinal()), InputError);
}

// a^w is the supremum of a^n: it bounds every finite power and is the least
// w-power with that property among the exponents tried.
TEST(Ordinal, PowOmegaAgainstFinitePowers) {
  for (const char* base : {"w^2", "w^w", "w+1", "w^3*2+w"}) {
    const Ordinal a = P(base);
    const Ordinal limit = ord_pow_omega(a);
    Ordinal power(1);
    for (int n = 1; n <= 6; ++n) {
      power = power * a;
      EXPECT_LT(power, limit) << base;
    }
    // The exponent of a^w is the limit of the leading exponents of a^n.
    const Ordinal step = a.leading_exponent();
    Ordinal multiple = step;
    for (int n = 1; n <= 6; ++n) {
      EXPECT_EQ(ord_pow(a, Ordinal(n)).leading_exponent(), multiple);
      multiple = multiple + step;
    }
    EXPECT_EQ(limit.leading_exponent(), step * w);
  }
}

TEST(Ordinal, Prop7Applies) {
  EXPECT_TRUE(prop7_applies(P("w^2"), P("w^3")));
  EXPECT_TRUE(prop7_applies(P("w^3"), P("w^2")));
  EXPECT_FALSE(prop7_applies(w, P("w^2")));
  EXPECT_FALSE(prop7_applies(P("w^2"), P("w^w")));
  EXPECT_TRUE(prop7_applies(P("w^w"), P("w^(w*5)")));
}

TEST(Ordinal, ParseRoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Ordinal a = oracle::random_ordinal(rng, 3);
    ASSERT_EQ(parse_ordinal(to_string(a)), a) << to_string(a);
  }
}

TEST(Ordinal, StrictParserGivesHint) {
  try {
    parse_ordinal("w*w^w");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("'w^w'"), std::string::npos);
  }
  EXPECT_THROW(parse_ordinal("7+w"), InputError);
  EXPECT_THROW(parse_ordinal("w*1"), InputError);
  EXPECT_EQ(parse_ordinal(" w^2 * 3 + 7 "), P("w^2*3+7"));
}

TEST(Ordinal, ExpressionErrors) {
  for (const char* text : {"", "w+", "(w", "w^", "x", "w**2", "2^w^w", "99999999999999999999"}) {
    EXPECT_THROW(P(text), InputError) << text;
  }
  EXPECT_EQ(P("2^w"), w);
  EXPECT_EQ(P("2^3"), Ordinal(8));
  EXPECT_EQ(P("(w+1)^2"), P("w^2+w+1"));
}

TEST(Ordinal, Structure) {
  EXPECT_TRUE(Ordinal(3).is_successor());
  EXPECT_TRUE(w.is_limit());
  EXPECT_FALSE(Ordinal().is_limit());
  EXPECT_EQ(P("w^w^w").height(), 3);
  EXPECT_EQ(Ordinal(4).height(), 0);
  EXPECT_THROW(w.finite_value(), InputError);
  EXPECT_THROW(Ordinal::from_terms({{Ordinal(1), 1}, {Ordinal(2), 1}}), InputError);
  EXPECT_THROW(Ordinal::from_terms({{Ordinal(1), 0}}), InputError);
}

}  // namespace
}  // namespace nestalg
