#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oddform/action.hpp"
#include "oddform/sandwich.hpp"

using namespace oddform;

TEST_SUITE("sandwich") {
  TEST_CASE("level of the example subgroup") {
    const Instance inst = fixtures::load(fixtures::m2f2(2));
    const FormsContext& ctx = *inst.ctx;
    const SubgroupHandle H = m2f2_row_subgroup(ctx);
    const LevelResult lv = level_of(H);
    REQUIRE(lv.certified());
    CHECK(lv.ideal.size() == 1);
    CHECK(lv.omega.size() == 16);
    CHECK(lv.omega.zero_fiber().size() == 1);
    CHECK(is_E_normal(H, ctx.elementary_generators()).normal);
    const SandwichReport sw = sandwich_check(H);
    CHECK(sw.lower.verdict == Verdict::verified);
    CHECK(sw.upper.verdict == Verdict::verified);
  }

  TEST_CASE("a non-normal subgroup") {
    const Instance inst = fixtures::load(fixtures::f2(2));
    const FormsContext& ctx = *inst.ctx;
    const SubgroupHandle H = SubgroupHandle::from_generators(ctx, {ctx.T_short(1, 2, 1)});
    CHECK(H.closure_size() == 2);
    CHECK_FALSE(is_E_normal(H, ctx.elementary_generators()).normal);
    const SandwichReport sw = sandwich_check(H);
    CHECK(sw.level.ideal.size() == 2);
    // T_21(1) is preelementary at that level but not in H.
    CHECK((!sw.level.certified() || sw.lower.verdict == Verdict::refuted));
  }

  TEST_CASE("the whole elementary group is E-normal of absolute level") {
    const Instance inst = fixtures::load(fixtures::f2(2));
    const FormsContext& ctx = *inst.ctx;
    const SubgroupHandle E = SubgroupHandle::from_generators(ctx, ctx.elementary_generators());
    REQUIRE_FALSE(E.truncated());
    const SandwichReport sw = sandwich_check(E);
    REQUIRE(sw.level.certified());
    CHECK(sw.level.ideal.size() == 2);
    CHECK(sw.level.omega == ctx.delta());
    CHECK(sw.e_normal.normal);
    CHECK(sw.lower.verdict == Verdict::verified);
    CHECK(sw.upper.verdict == Verdict::verified);
  }

  TEST_CASE("truncated closures are undecidable") {
    const Instance inst = fixtures::load(fixtures::z4(3));
    const FormsContext& ctx = *inst.ctx;
    const SubgroupHandle H = SubgroupHandle::from_generators(ctx, ctx.elementary_generators(), 50);
    CHECK(H.truncated());
    CHECK_FALSE(H.decidable());
    CHECK_THROWS_AS(level_of(H), Error);
  }

  TEST_CASE("unimodular columns and shifts") {
    auto z4 = build_ring(RingSpec::integers_mod(4));
    CHECK(is_left_unimodular(*z4, {2, 1}));
    CHECK_FALSE(is_left_unimodular(*z4, {2, 2, 0}));
    const auto v = left_unimodular_certificate(*z4, {2, 3});
    REQUIRE(v.has_value());
    CHECK(z4->add(z4->mul((*v)[0], 2), z4->mul((*v)[1], 3)) == 1);
    // (2, 0, 1): u_1 + x u_3 must become a unit on its own with m = 2.
    const Elem x = find_unimodular_shift(*z4, {2, 0, 1}, 2);
    CHECK(is_left_unimodular(*z4, {z4->add(2, x), 0}));
  }

  TEST_CASE("reductions produce certified triangular factors") {
    for (const auto& cfg : {fixtures::f2(3), fixtures::z4(3), fixtures::m2f2(3)}) {
      const Instance inst = fixtures::load(cfg);
      const FormsContext& ctx = *inst.ctx;
      const auto gens = ctx.elementary_generators();
      std::mt19937_64 rng(11);
      for (int t = 0; t < 20; ++t) {
        UMatrix s = ctx.identity();
        for (int k = 0; k < 10; ++k) s = ctx.multiply(s, gens[rng() % gens.size()]);
        const Reduction a = reduce_first_entry(ctx, s);
        CHECK(a.certified);
        CHECK(has_teu_shape(ctx, a.f));
        CHECK(ctx.multiply(a.f, s) == a.result);
        CHECK(ctx.ring().is_unit(a.result.at(1, 1)));
        const Reduction b = reduce_two_columns(ctx, s);
        CHECK(b.certified);
        CHECK(has_ueu_shape(ctx, b.f));
        for (int k : {1, 2})
          for (int i = 1; i <= ctx.n(); ++i) CHECK(b.result.at(i, k) == (i == k ? ctx.ring().one() : 0));
      }
    }
  }

  TEST_CASE("reduction guards") {
    const Instance inst = fixtures::load(fixtures::f2(2));
    CHECK_THROWS_AS(reduce_two_columns(*inst.ctx, inst.ctx->identity()), Error);
    const Instance one = fixtures::load(fixtures::f2(1));
    CHECK_THROWS_AS(reduce_first_entry(*one.ctx, one.ctx->identity()), Error);
  }

  TEST_CASE("shape predicates") {
    const Instance inst = fixtures::load(fixtures::f2(3));
    const FormsContext& ctx = *inst.ctx;
    CHECK(has_teu_shape(ctx, ctx.T_short(1, 2, 1)));
    CHECK(has_teu_shape(ctx, ctx.T_short(1, -2, 1)));
    CHECK_FALSE(has_teu_shape(ctx, ctx.T_short(2, 1, 1)));
    CHECK(has_ueu_shape(ctx, ctx.T_short(2, 1, 1)));
    CHECK_FALSE(has_ueu_shape(ctx, ctx.T_short(-2, 1, 1)));
  }
}
