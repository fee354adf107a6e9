#include <gtest/gtest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "rbcm/galois_field.hpp"

namespace rbcm {
namespace {

struct ContextCase {
  std::uint32_t p, e, w1, w2;
};

// Values from tests/oracles/psl_oracle.py.
TEST(MakeContext, MatchesOracle) {
  for (const auto& c : {ContextCase{5, 2, 2, 1}, ContextCase{7, 3, 1, 1}, ContextCase{11, 2, 2, 1},
                        ContextCase{13, 2, 2, 1}}) {
    const FieldContext ctx = make_context(c.p);
    EXPECT_EQ(ctx.e().value, c.e) << "p=" << c.p;
    EXPECT_EQ(ctx.w1().value, c.w1) << "p=" << c.p;
    EXPECT_EQ(ctx.w2().value, c.w2) << "p=" << c.p;
  }
}

TEST(MakeContext, RejectsBadPrimes) {
  EXPECT_THROW(make_context(4), std::invalid_argument);
  EXPECT_THROW(make_context(3), std::invalid_argument);
  EXPECT_THROW(make_context(2), std::invalid_argument);
  EXPECT_THROW(make_context(15), std::invalid_argument);
  EXPECT_THROW(make_context(1), std::invalid_argument);
}

TEST(MakeContext, InvariantsHold) {
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 97u}) {
    const FieldContext ctx = make_context(p);
    EXPECT_EQ(ctx.multiplicative_order(ctx.e()), p - 1);
    EXPECT_FALSE(ctx.is_square(ctx.e()));
    EXPECT_NE(ctx.w2().value, 0u);
    EXPECT_EQ(ctx.multiplicative_order(Fp2Elem{ctx.w1(), ctx.w2()}), std::uint64_t{p} * p - 1);
    EXPECT_FALSE(ctx.is_square(ctx.sub(ctx.square(ctx.w()), ctx.e())));
    // e is the smallest primitive root
    for (std::uint32_t g = 2; g < ctx.e().value; ++g)
      EXPECT_LT(ctx.multiplicative_order(FpElem{g}), p - 1);
  }
}

TEST(Fp, Arithmetic) {
  const FieldContext ctx = make_context(7);
  EXPECT_EQ(ctx.elem(-1).value, 6u);
  EXPECT_EQ(ctx.elem(15).value, 1u);
  EXPECT_EQ(ctx.mul(FpElem{3}, FpElem{5}).value, 1u);
  EXPECT_EQ(ctx.inv(FpElem{3}).value, 5u);
  EXPECT_EQ(ctx.div(FpElem{1}, FpElem{2}).value, 4u);
  EXPECT_EQ(ctx.pow(FpElem{3}, 6).value, 1u);
  EXPECT_THROW(ctx.inv(FpElem{0}), std::domain_error);
  EXPECT_EQ(ctx.sqrt(FpElem{2}).value().value, 3u);
  EXPECT_FALSE(ctx.sqrt(FpElem{3}).has_value());
}

TEST(Fp2, MultiplicationRule) {
  const FieldContext ctx = make_context(11);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::uint32_t> d(0, 10);
  for (int i = 0; i < 200; ++i) {
    const Fp2Elem x{FpElem{d(rng)}, FpElem{d(rng)}}, y{FpElem{d(rng)}, FpElem{d(rng)}};
    const Fp2Elem xy = ctx.mul(x, y);
    const FpElem re = ctx.add(ctx.mul(x.re, y.re), ctx.mul(ctx.e(), ctx.mul(x.im, y.im)));
    const FpElem im = ctx.add(ctx.mul(x.re, y.im), ctx.mul(x.im, y.re));
    EXPECT_EQ(xy.re, re);
    EXPECT_EQ(xy.im, im);
    if (!x.is_zero())
      EXPECT_EQ(ctx.mul(x, ctx.inv(x)), ctx.embed(FpElem{1}));
  }
  EXPECT_EQ(ctx.mul(ctx.sqrt_e(), ctx.sqrt_e()), ctx.embed(ctx.e()));
}

TEST(Norm, EqualsFrobeniusPower) {
  for (std::uint32_t p : {5u, 7u, 13u}) {
    const FieldContext ctx = make_context(p);
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) {
        const Fp2Elem x{FpElem{a}, FpElem{b}};
        const Fp2Elem powered = ctx.pow(x, p + 1);
        EXPECT_TRUE(powered.im.is_zero());
        EXPECT_EQ(norm(x, ctx), powered.re);
      }
  }
}

TEST(Norm, RealElementsSquare) {
  const FieldContext ctx = make_context(13);
  for (std::uint32_t a = 0; a < 13; ++a)
    EXPECT_EQ(norm(ctx.embed(FpElem{a}), ctx), ctx.square(FpElem{a}));
}

TEST(Norm, Multiplicative) {
  const FieldContext ctx = make_context(17);
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::uint32_t> d(0, 16);
  for (int i = 0; i < 300; ++i) {
    const Fp2Elem x{FpElem{d(rng)}, FpElem{d(rng)}}, y{FpElem{d(rng)}, FpElem{d(rng)}};
    EXPECT_EQ(norm(ctx.mul(x, y), ctx), ctx.mul(norm(x, ctx), norm(y, ctx)));
  }
}

TEST(Legendre, Values) {
  const FieldContext ctx = make_context(7);
  EXPECT_EQ(legendre(FpElem{0}, ctx), 0);
  EXPECT_EQ(legendre(FpElem{2}, ctx), 1);
  EXPECT_EQ(legendre(FpElem{3}, ctx), -1);
  const FieldContext c11 = make_context(11);
  EXPECT_EQ(legendre(FpElem{2}, c11), -1);
}

TEST(SolveNormEquation, OracleValues) {
  const FieldContext ctx = make_context(5);
  const auto sols = solve_norm_equation(FpElem{1}, ctx);
  const std::vector<std::pair<FpElem, FpElem>> expected{
      {FpElem{1}, FpElem{0}}, {FpElem{2}, FpElem{2}}, {FpElem{2}, FpElem{3}},
      {FpElem{3}, FpElem{2}}, {FpElem{3}, FpElem{3}}, {FpElem{4}, FpElem{0}}};
  EXPECT_EQ(sols, expected);
}

TEST(SolveNormEquation, FibersHaveSizePPlusOne) {
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u, 19u}) {
    const FieldContext ctx = make_context(p);
    for (std::uint32_t c = 1; c < p; ++c) {
      const auto sols = solve_norm_equation(FpElem{c}, ctx);
      EXPECT_EQ(sols.size(), p + 1) << "p=" << p << " c=" << c;
      std::set<std::pair<FpElem, FpElem>> distinct(sols.begin(), sols.end());
      EXPECT_EQ(distinct.size(), sols.size());
      for (const auto& [x, z] : sols)
        EXPECT_EQ(norm(Fp2Elem{x, z}, ctx), (FpElem{c}));
    }
  }
}

TEST(SolveNormEquation, ZeroHasOnlyTrivialSolution) {
  const FieldContext ctx = make_context(7);
  const auto sols = solve_norm_equation(FpElem{0}, ctx);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_TRUE(sols[0].first.is_zero());
  EXPECT_TRUE(sols[0].second.is_zero());
}

}  // namespace
}  // namespace rbcm
