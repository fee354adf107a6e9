#include <gtest/gtest.h>

#include <set>

#include "rbcm/closed_form.hpp"
#include "rbcm/subgroup_oracle.hpp"

namespace rbcm {
namespace {

TEST(Builders, Examples) {
  const FieldContext ctx = make_context(7);
  EXPECT_EQ(build_omega_I_alpha(ctx, ctx.elem(2)), make_projective(ctx, 2, 1, 3, 2));
  EXPECT_EQ(build_omega_I_alpha(ctx, ctx.elem(3)), make_projective(ctx, 3, 1, 1, 3));
  EXPECT_EQ(build_omega_II_beta(ctx, ctx.elem(1)), make_projective(ctx, 0, 6, 1, 0));
  EXPECT_EQ(build_omega_II_alpha(ctx, ctx.elem(1)), make_projective(ctx, 1, 1, 5, 6));
  EXPECT_THROW(build_omega_I_alpha(ctx, ctx.elem(1)), std::invalid_argument);
  EXPECT_THROW(build_omega_II_beta(ctx, ctx.elem(0)), std::invalid_argument);
  const FieldContext p13 = make_context(13);
  EXPECT_THROW(build_omega_II_alpha(p13, p13.elem(5)), std::invalid_argument);  // 25 = -1
}

TEST(Builders, GammaSolutionsFillNormFibre) {
  for (std::uint32_t p : {7u, 11u, 13u}) {
    const FieldContext ctx = make_context(p);
    for (std::uint32_t a = 2; a + 1 < p; ++a) {
      const auto sols = I_gamma_solutions(ctx, ctx.elem(a));
      EXPECT_EQ(sols.size(), p + 1) << p << " " << a;
      EXPECT_TRUE(std::is_sorted(sols.begin(), sols.end()));
      for (const auto& [x, z] : sols) {
        const FpElem lhs = ctx.sub(ctx.square(ctx.sub(x, ctx.elem(a))), ctx.mul(ctx.e(), ctx.square(z)));
        EXPECT_EQ(lhs, ctx.sub(ctx.square(ctx.elem(a)), ctx.elem(1)));
      }
    }
  }
  const FieldContext ctx = make_context(7);
  EXPECT_EQ(I_gamma_solutions(ctx, ctx.elem(2)).size(), 8u);
}

TEST(Builders, Involutions) {
  const FieldContext ctx = make_context(11);
  for (std::uint32_t z = 1; z < 11; ++z)
    EXPECT_EQ(order(ctx, build_omega_II_beta(ctx, ctx.elem(z))), 2u);
  for (std::uint32_t a = 1; a < 11; ++a) {
    if (ctx.square(ctx.elem(a)) == ctx.elem(-1))
      continue;
    EXPECT_EQ(order(ctx, build_omega_II_alpha(ctx, ctx.elem(a))), 2u);
  }
  for (std::uint32_t ac = 1; ac < 11; ++ac) {
    const FpElem a_check = ctx.elem(ac);
    if (ctx.square(a_check) == ctx.neg(ctx.e()))
      continue;
    for (std::size_t k = 0; k < II_gamma_solutions(ctx, a_check).size(); ++k)
      EXPECT_EQ(order(ctx, build_omega_II_gamma(ctx, a_check, k)), 2u);
  }
}

TEST(Candidates, SolutionChoiceDoesNotMatter) {
  // Every choice of norm-equation solution gives an isomorphic map.
  for (std::uint32_t p : {7u, 11u}) {
    const ProjectiveGroup g(make_context(p));
    const FieldContext& ctx = g.field();
    for (RbcmType t : {RbcmType::I, RbcmType::II}) {
      for (const auto& c : enumerate_closed_form(g, t)) {
        if (c.params.family != Family::I_gamma && c.params.family != Family::II_gamma)
          continue;
        const std::size_t count = c.params.family == Family::I_gamma
                                      ? I_gamma_solutions(ctx, c.params.a).size()
                                      : II_gamma_solutions(ctx, c.params.a_check).size();
        for (std::size_t k = 1; k < count; k += 2) {
          FamilyParams q = c.params;
          q.solution = k;
          const RbcmSpec other = make_spec(g, family_sigma(ctx, q), family_omega(ctx, q), t);
          EXPECT_TRUE(isomorphic(g, c.spec, other)) << p << " " << c.params.describe() << " sol " << k;
        }
      }
    }
  }
}

TEST(Candidates, SigmaHasFamilyOrder) {
  const ProjectiveGroup g(make_context(13));
  const FieldContext& ctx = g.field();
  for (RbcmType t : {RbcmType::I, RbcmType::II}) {
    for (const auto& c : enumerate_closed_form(g, t)) {
      const std::uint64_t want = t == RbcmType::I ? 2u * c.params.n : c.params.n;
      EXPECT_EQ(order(ctx, c.spec.sigma), want) << c.params.describe();
      EXPECT_EQ(c.spec.valence, want);
    }
  }
}

TEST(Candidates, LegendreExclusion) {
  // 2 is a square mod 7 and mod 23 but not mod 11 or 13.
  EXPECT_FALSE(excluded_gamma_n2_params(ProjectiveGroup(make_context(7))).empty());
  EXPECT_TRUE(excluded_gamma_n2_params(ProjectiveGroup(make_context(11))).empty());
  EXPECT_TRUE(excluded_gamma_n2_params(ProjectiveGroup(make_context(13))).empty());
  const ProjectiveGroup g(make_context(7));
  for (const auto& params : excluded_gamma_n2_params(g)) {
    EXPECT_EQ(params.family, Family::I_gamma);
    EXPECT_EQ(params.n, 2);
    const RbcmSpec spec =
        make_spec(g, family_sigma(g.field(), params), family_omega(g.field(), params), RbcmType::I);
    const SubgroupReport r = closure(g, spec.orbit);
    EXPECT_EQ(r.diagnosis(), "S4");
  }
}

struct ValidationExpectation {
  std::uint32_t p;
  std::size_t misses, spuria;
};

class CrossValidate : public ::testing::TestWithParam<ValidationExpectation> {};

TEST_P(CrossValidate, Outcome) {
  const auto want = GetParam();
  const ProjectiveGroup g(make_context(want.p));
  const ValidationReport r = cross_validate(g);
  EXPECT_EQ(r.total_misses(), want.misses);
  EXPECT_EQ(r.total_spuria(), want.spuria);
  EXPECT_TRUE(r.duplicates_witnessed());
  EXPECT_EQ(r.agrees(), want.misses == 0 && want.spuria == 0);
  for (const auto& b : r.buckets) {
    EXPECT_EQ(b.brute_force_classes, b.matched + b.misses.size());
    for (const auto& d : b.duplicates)
      EXPECT_TRUE(d.witness.has_value());
  }
  for (const auto* classes : {&r.classes_I, &r.classes_II})
    for (const auto& c : *classes)
      EXPECT_EQ(c.provenance.has_value(), true) << want.p;
}

// p = 7: the II_gamma n = 4 parameters with 2a^2 = -1 pass the criterion but
// generate S4, giving two spurious candidates.
INSTANTIATE_TEST_SUITE_P(Primes, CrossValidate,
                         ::testing::Values(ValidationExpectation{5, 0, 0}, ValidationExpectation{7, 0, 2},
                                           ValidationExpectation{11, 0, 0}, ValidationExpectation{13, 0, 0}),
                         [](const auto& info) { return "p" + std::to_string(info.param.p); });

TEST(CrossValidate, SevenSpuriaAreOctahedral) {
  const ProjectiveGroup g(make_context(7));
  const ValidationReport r = cross_validate(g);
  std::set<std::uint32_t> a_checks;
  for (const auto& b : r.buckets)
    for (const auto& s : b.spuria) {
      EXPECT_EQ(s.params.family, Family::II_gamma);
      EXPECT_EQ(s.params.n, 4);
      a_checks.insert(s.params.a_check.value);
    }
  EXPECT_EQ(a_checks, (std::set<std::uint32_t>{3, 4}));
  std::set<std::string> codes;
  for (const auto& f : r.findings)
    codes.insert(f.code);
  EXPECT_TRUE(codes.count("spurious_candidate"));
  EXPECT_TRUE(codes.count("legendre_gamma_n2"));
  EXPECT_FALSE(codes.count("missed_class"));
}

TEST(CrossValidate, ParallelismDoesNotChangeReport) {
  const ProjectiveGroup g(make_context(11));
  const ValidationReport a = cross_validate(g, {1});
  const ValidationReport b = cross_validate(g, {3});
  EXPECT_EQ(a.findings, b.findings);
  ASSERT_EQ(a.classes_II.size(), b.classes_II.size());
  for (std::size_t i = 0; i < a.classes_II.size(); ++i)
    EXPECT_EQ(a.classes_II[i].key, b.classes_II[i].key);
}

}  // namespace
}  // namespace rbcm
