#include "doctest.h"
#include "fixtures.hpp"
#include "oddform/action.hpp"
#include "oddform/congruence.hpp"
#include "oddform/suites.hpp"

using namespace oddform;

namespace {

PointSet row_param(const FiniteRing& r, const std::vector<Elem>& xs) {
  PointSet p(r.size());
  for (Elem x : xs) p.insert({x, 0});
  return p;
}

}  // namespace

TEST_SUITE("congruence") {
  TEST_CASE("level certification") {
    const Instance inst = fixtures::load(fixtures::z4(2));
    const FormsContext& ctx = *inst.ctx;
    const ElemSet two = ideal_generated(ctx.ring(), {2});
    CHECK_NOTHROW(Level(ctx, two, omega_min(ctx.heis(), ctx.delta(), two)));
    try {
      Level(ctx, two, ctx.delta());
      FAIL("accepted Omega above Omega_max");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::certification_failed);
    }
    const Level a = Level::absolute(ctx);
    CHECK(a.ideal().size() == 4);
    CHECK(a.omega() == ctx.delta());
    CHECK(Level::trivial(ctx).omega().size() == 1);
  }

  TEST_CASE("root elements in the principal congruence subgroup") {
    const Instance inst = fixtures::load(fixtures::z4(2));
    const FormsContext& ctx = *inst.ctx;
    const ElemSet two = ideal_generated(ctx.ring(), {2});
    const Level L(ctx, two, omega_max(ctx.heis(), ctx.delta(), two));
    CHECK(in_principal(L, ctx.identity()).member);
    for (Elem x = 0; x < 4; ++x) CHECK(in_principal(L, ctx.T_short(1, -2, x)).member == two.contains(x));
    for (int i : {1, -1})
      for (const HPoint& a : ctx.delta(-Theta::eps(i)).points())
        CHECK(in_principal(L, ctx.T_extra(i, a)).member == L.omega(-Theta::eps(i)).contains(a));
  }

  TEST_CASE("column criterion agrees with the quadratic map definition") {
    const Instance inst = fixtures::load(fixtures::f3(1));
    const FormsContext& ctx = *inst.ctx;
    const auto group = enumerate_unitary_group(ctx);
    for (const ElemSet& I : invariant_ideals(ctx.quadruple()))
      for (const PointSet& om : enumerate_relative_form_parameters(ctx.heis(), ctx.delta(), I)) {
        const Level L(ctx, I, om);
        for (const UMatrix& g : group) {
          CHECK(in_principal(L, g).member == in_principal_bruteforce(L, g));
          const TildeMembership t = in_tilde(L, g);
          CHECK(t.agree());
          CHECK(t.member == in_tilde_bruteforce(L, g));
        }
      }
  }

  TEST_CASE("normalizer membership for the block swap") {
    const Instance inst = fixtures::load(fixtures::m2f2(2));
    const FormsContext& ctx = *inst.ctx;
    const FiniteRing& r = ctx.ring();
    ElemSet zero(16);
    zero.insert(0);
    const Elem swap_digits[4] = {0, 1, 1, 0};
    UMatrix sigma = ctx.identity();
    sigma.at(0, 0) = r.compose(swap_digits);
    const Elem row1[4] = {1, 1, 0, 0}, e11[4] = {1, 0, 0, 0}, e12[4] = {0, 1, 0, 0};
    const PointSet omega2 = row_param(r, {0, r.compose(row1), r.compose(e11), r.compose(e12)});
    const Level L2(ctx, zero, omega2);
    const Level L1 = Level::trivial(ctx);
    CHECK_FALSE(in_tilde(L2, sigma).member);
    CHECK(in_tilde(L1, sigma).member);
    CHECK(in_tilde(L1, sigma).agree());
    CHECK(in_tilde(L2, sigma).agree());
    CHECK_FALSE(in_tilde_bruteforce(L2, sigma));
  }

  TEST_CASE("everything is in CU at the absolute level") {
    const Instance inst = fixtures::load(fixtures::f2(2));
    const FormsContext& ctx = *inst.ctx;
    const Level a = Level::absolute(ctx);
    const auto gens = ctx.elementary_generators();
    const UMatrix g = ctx.multiply(gens[0], gens[gens.size() - 1]);
    CHECK(in_CU(a, g, gens).member);
    CHECK(in_principal(a, g).member);
  }

  TEST_CASE("J(sigma) and J'(sigma)") {
    const Instance inst = fixtures::load(fixtures::z4(2));
    const FormsContext& ctx = *inst.ctx;
    CHECK(j_sigma(ctx, ctx.identity(), ctx.identity()).size() == 1);
    CHECK(j_prime_sigma(ctx, ctx.identity(), ctx.identity()).size() == 1);
    const UMatrix t = ctx.T_short(1, 2, 2);
    CHECK(j_sigma(ctx, t, ctx.inv(t)).size() == 2);
    CHECK(left_ideal_generated(ctx.ring(), {2}).size() == 2);
  }

  TEST_CASE("congruence identities on small instances") {
    for (const auto& cfg : {fixtures::f2(1), fixtures::f3(1), fixtures::z4(1)}) {
      const Instance inst = fixtures::load(cfg);
      const FormsContext& ctx = *inst.ctx;
      const auto group = enumerate_unitary_group(ctx);
      for (const ElemSet& I : invariant_ideals(ctx.quadruple()))
        for (const PointSet& om : enumerate_relative_form_parameters(ctx.heis(), ctx.delta(), I)) {
          const Level L(ctx, I, om);
          for (const CheckReport& rep : verify_q_sum_defect(L)) {
            INFO(rep.id);
            CHECK(rep.passed());
            CHECK(rep.exhaustive);
          }
          CHECK(verify_q_shift(L, group).passed());
          CHECK(verify_tilde_normalizes(L, group).passed());
        }
    }
  }

  TEST_CASE("commutator column identities") {
    for (const auto& cfg : {fixtures::f2(3), fixtures::z4(3), fixtures::m2f2(3)}) {
      const Instance inst = fixtures::load(cfg);
      const CheckReport rep = verify_commutator_columns_sampled(*inst.ctx, 60, 5);
      CHECK(rep.passed());
      CHECK(rep.checked == 60 * 7);
    }
  }

  TEST_CASE("normal closure of the absolute elementary generators") {
    const Instance inst = fixtures::load(fixtures::classical("gl_odd", 2, 1));
    const FormsContext& ctx = *inst.ctx;
    const SubgroupHandle e = eu_level_normal_closure(Level::absolute(ctx), ctx.elementary_generators());
    CHECK_FALSE(e.truncated());
    CHECK(e.closure_size() == 168);
  }
}
