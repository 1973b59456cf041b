#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oddform/unitary.hpp"

using namespace oddform;

TEST_SUITE("unitary") {
  TEST_CASE("basis layout") {
    const Theta th{3};
    CHECK(th.pos(1) == 0);
    CHECK(th.pos(3) == 2);
    CHECK(th.pos(0) == 3);
    CHECK(th.pos(-3) == 4);
    CHECK(th.pos(-1) == 6);
    for (std::size_t p = 0; p < th.dim(); ++p) CHECK(th.pos(th.label(p)) == p);
  }

  TEST_CASE("elementary generators are unitary") {
    for (const auto& cfg : {fixtures::f2(2), fixtures::z4(2), fixtures::m2f2(2), fixtures::classical("gl_odd", 2, 2)}) {
      const Instance inst = fixtures::load(cfg);
      const FormsContext& ctx = *inst.ctx;
      for (const UMatrix& g : ctx.elementary_generators()) {
        CHECK(ctx.is_unitary(g).unitary);
        CHECK(ctx.preserves_form(g));
      }
    }
  }

  TEST_CASE("index and parameter checks") {
    const Instance inst = fixtures::load(fixtures::f2(2, "min"));
    const FormsContext& ctx = *inst.ctx;
    CHECK_THROWS_AS(ctx.T_short(1, -1, 1), Error);
    CHECK_THROWS_AS(ctx.T_short(1, 0, 1), Error);
    try {
      ctx.T_extra(1, {1, 0});
      FAIL("accepted a point outside Delta");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::point_not_in_parameter);
    }
    CHECK_NOTHROW(ctx.T_extra(1, {0, 0}));
  }

  TEST_CASE("inverse and commutator") {
    const Instance inst = fixtures::load(fixtures::m2f2(2));
    const FormsContext& ctx = *inst.ctx;
    const auto gens = ctx.elementary_generators();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
      UMatrix s = ctx.identity();
      for (int k = 0; k < 8; ++k) s = ctx.multiply(s, gens[rng() % gens.size()]);
      const UMatrix si = ctx.inv(s);
      CHECK(ctx.multiply(s, si) == ctx.identity());
      CHECK(ctx.multiply(si, s) == ctx.identity());
      CHECK(ctx.is_unitary(s).unitary);
      const UMatrix g = gens[rng() % gens.size()];
      CHECK(ctx.commutator(s, g) == ctx.multiply(ctx.multiply(s, g), ctx.multiply(si, ctx.inv(g))));
    }
    UMatrix singular = ctx.identity();
    singular.at(1, 1) = 0;
    CHECK_FALSE(ctx.inverse(singular).has_value());
    CHECK_THROWS_AS(ctx.inv(singular), Error);
  }

  TEST_CASE("column criterion against the definition on every invertible matrix over F2") {
    const Instance inst = fixtures::load(fixtures::f2(1));
    const FormsContext& ctx = *inst.ctx;
    const auto inv = enumerate_invertible(ctx);
    CHECK(inv.size() == 168);  // |GL3(F2)| = 7 * 6 * 4
    std::size_t unitary = 0;
    for (const UMatrix& m : inv) {
      const bool fast = ctx.is_unitary(m).unitary;
      CHECK(fast == ctx.is_unitary_bruteforce(m));
      unitary += fast;
    }
    CHECK(unitary == enumerate_unitary_group(ctx).size());
  }

  TEST_CASE("GL-odd over F2 is GL3(F2)") {
    const Instance inst = fixtures::load(fixtures::classical("gl_odd", 2, 1));
    const FormsContext& ctx = *inst.ctx;
    CHECK(enumerate_unitary_group(ctx).size() == 168);
    CHECK(generate_group(ctx, ctx.elementary_generators()).size() == 168);
  }

  TEST_CASE("Sp-odd over F3 preserves the skew Gram matrix") {
    const Instance inst = fixtures::load(fixtures::classical("sp_odd", 3, 1));
    const FormsContext& ctx = *inst.ctx;
    const FiniteRing& r = ctx.ring();
    // Gram matrix of b in basis e_1, e_0, e_-1: [[0,0,1],[0,0,0],[-1,0,0]].
    auto preserves = [&](const UMatrix& s) {
      const Theta th = ctx.theta();
      auto g = [&](int i, int j) -> Elem {
        if (i == 1 && j == -1) return r.one();
        if (i == -1 && j == 1) return r.neg(r.one());
        return 0;
      };
      for (int i : th.all())
        for (int j : th.all()) {
          Elem acc = 0;
          for (int k : th.all())
            for (int l : th.all()) acc = r.add(acc, r.mul(r.mul(s.at(k, i), g(k, l)), s.at(l, j)));
          if (acc != g(i, j)) return false;
        }
      return true;
    };
    std::size_t members = 0;
    for (const UMatrix& m : enumerate_invertible(ctx)) {
      const bool u = ctx.is_unitary(m).unitary;
      CHECK(u == preserves(m));
      members += u;
    }
    // e_0 spans the radical (2 scalings), the quotient lies in SL2(F3) (24),
    // and the images of e_1, e_-1 take any e_0 component (9).
    CHECK(members == 2 * 24 * 9);
  }

  TEST_CASE("relations at n = 2 over F2 and Z/4") {
    for (const auto& cfg : {fixtures::f2(2), fixtures::z4(2)}) {
      const Instance inst = fixtures::load(cfg);
      for (const CheckReport& rep : verify_relations(*inst.ctx)) {
        INFO(rep.id);
        CHECK(rep.passed());
        CHECK(rep.exhaustive);
      }
      for (const CheckReport& rep : verify_permutation_conjugations(*inst.ctx)) {
        INFO(rep.id);
        CHECK(rep.passed());
      }
    }
  }

  TEST_CASE("matrix JSON round trip") {
    const Instance inst = fixtures::load(fixtures::m2f2(2));
    const FormsContext& ctx = *inst.ctx;
    const UMatrix g = ctx.T_short(1, -2, 6);
    CHECK(matrix_from_json(ctx, matrix_to_json(ctx, g)) == g);
    CHECK(matrix_from_json(ctx, matrix_to_json(ctx, g, true)) == g);
  }
}
