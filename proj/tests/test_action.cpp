#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "oddform/action.hpp"
#include "oddform/suites.hpp"

using namespace oddform;

namespace {

Elem mat(const FiniteRing& r, Elem a, Elem b, Elem c, Elem d) {
  const Elem digits[4] = {a, b, c, d};
  return r.compose(digits);
}

PointSet rows(const FiniteRing& r, std::initializer_list<Elem> xs) {
  PointSet p(r.size());
  for (Elem x : xs) p.insert({x, 0});
  return p;
}

}  // namespace

TEST_SUITE("action") {
  TEST_CASE("two routes to the conjugated parameter agree") {
    for (const auto& cfg : {fixtures::f2(1), fixtures::f3(1), fixtures::classical("gl_odd", 2, 1)}) {
      const Instance inst = fixtures::load(cfg);
      const FormsContext& ctx = *inst.ctx;
      const auto group = enumerate_unitary_group(ctx);
      for (const ElemSet& I : invariant_ideals(ctx.quadruple())) {
        const ROFPLattice lat = rofp_lattice(ctx, I);
        for (const PointSet& om : lat.params) {
          CHECK(conj_form_parameter(ctx, ctx.identity(), om, I) == om);
          for (const UMatrix& s : group)
            CHECK(conj_form_parameter(ctx, s, om, I) == conj_form_parameter_big(ctx, s, om, I));
        }
      }
    }
  }

  TEST_CASE("action laws and subgroup equality over F2 at n = 1") {
    const Instance inst = fixtures::load(fixtures::f2(1));
    const FormsContext& ctx = *inst.ctx;
    const auto group = enumerate_unitary_group(ctx);
    for (const ElemSet& I : invariant_ideals(ctx.quadruple())) {
      const ROFPLattice lat = rofp_lattice(ctx, I);
      for (const CheckReport& rep : verify_action_laws(ctx, lat, group, 1, group.size() * group.size())) {
        INFO(rep.id);
        CHECK(rep.passed());
        CHECK(rep.exhaustive);
      }
      for (const PointSet& om : lat.params) {
        const Level L(ctx, I, om);
        for (const UMatrix& s : group) CHECK(conjugate_level_check(ctx, s, L, &group).passed());
      }
    }
  }

  TEST_CASE("the block swap and the lower unitriangular block on M2(F2)") {
    const Instance inst = fixtures::load(fixtures::m2f2(2));
    const FormsContext& ctx = *inst.ctx;
    const FiniteRing& r = ctx.ring();
    ElemSet zero(16);
    zero.insert(0);
    const PointSet o2 = rows(r, {0, mat(r, 1, 0, 0, 0), mat(r, 0, 1, 0, 0), mat(r, 1, 1, 0, 0)});
    const PointSet o3 = rows(r, {0, mat(r, 0, 0, 1, 0), mat(r, 0, 0, 0, 1), mat(r, 0, 0, 1, 1)});
    const PointSet o4 = rows(r, {0, mat(r, 1, 0, 1, 0), mat(r, 0, 1, 0, 1), mat(r, 1, 1, 1, 1)});
    UMatrix sigma = ctx.identity(), rho = ctx.identity();
    sigma.at(0, 0) = mat(r, 0, 1, 1, 0);
    rho.at(0, 0) = mat(r, 1, 0, 1, 1);
    CHECK(conj_form_parameter(ctx, sigma, o2, zero) == o3);
    CHECK(conj_form_parameter(ctx, sigma, o3, zero) == o2);
    CHECK(conj_form_parameter(ctx, sigma, o4, zero) == o4);
    CHECK(conj_form_parameter(ctx, rho, o2, zero) == o4);
    // The conjugate of tau by sigma is rho.
    UMatrix tau = ctx.identity();
    tau.at(0, 0) = mat(r, 1, 1, 0, 1);
    CHECK(ctx.conjugate(sigma, tau) == rho);
  }

  TEST_CASE("orbit labels") {
    const Instance inst = fixtures::load(fixtures::m2f2(2));
    const FormsContext& ctx = *inst.ctx;
    ElemSet zero(16);
    zero.insert(0);
    const ROFPLattice lat = rofp_lattice(ctx, zero);
    const OrbitPartition none = orbits(ctx, lat, {});
    CHECK(none.blocks.size() == lat.params.size());
    CHECK(none.label == "reachable-closure");
    CHECK(none.links.empty());
    const Instance small = fixtures::load(fixtures::f2(1));
    const auto group = enumerate_unitary_group(*small.ctx);
    const ROFPLattice l1 = rofp_lattice(*small.ctx, ElemSet::all(2));
    CHECK(orbits(*small.ctx, l1, group, true, true).label == "orbit");
  }

  TEST_CASE("the M2(F2) scenario at n = 2 and n = 3") {
    for (int n : {2, 3}) {
      const ScenarioResult res = run_m2f2_scenario(n);
      CHECK(res.passed);
      for (const json& a : res.report["assertions"]) {
        INFO(a["name"].get<std::string>());
        CHECK(a["pass"].get<bool>());
      }
      auto sizes = res.report["facts"]["partition_sizes"].get<std::vector<std::size_t>>();
      std::sort(sizes.begin(), sizes.end());
      CHECK(sizes == std::vector<std::size_t>{1, 1, 3});
    }
  }
}
