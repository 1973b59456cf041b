#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oddform/rings.hpp"

using namespace oddform;

TEST_SUITE("rings") {
  TEST_CASE("carrier sizes and commutativity") {
    CHECK(build_ring(RingSpec::integers_mod(4))->size() == 4);
    CHECK(build_ring(RingSpec::prime_field(3))->size() == 3);
    auto m = build_ring(RingSpec::matrix(2, RingSpec::prime_field(2)));
    CHECK(m->size() == 16);
    CHECK_FALSE(m->is_commutative());
    CHECK(build_ring(RingSpec::product_with_opposite(RingSpec::prime_field(2)))->size() == 4);
  }

  TEST_CASE("axioms hold exhaustively on the test rings") {
    for (const RingSpec& s : {RingSpec::integers_mod(4), RingSpec::prime_field(3),
                              RingSpec::matrix(2, RingSpec::prime_field(2)),
                              RingSpec::product_with_opposite(RingSpec::prime_field(3))}) {
      const AxiomReport rep = check_ring_axioms(*build_ring(s));
      CHECK(rep.ok);
      CHECK(rep.exhaustive);
    }
  }

  TEST_CASE("units of M2(F2) are GL2(F2)") {
    auto m = build_ring(RingSpec::matrix(2, RingSpec::prime_field(2)));
    std::size_t units = 0;
    for (Elem x = 0; x < m->size(); ++x) {
      const std::vector<Elem> d = m->components(x);
      const bool det = ((d[0] * d[3]) + (d[1] * d[2])) % 2 == 1;
      CHECK(m->is_unit(x) == det);
      if (m->is_unit(x)) {
        ++units;
        CHECK(m->mul(*m->inverse(x), x) == m->one());
        CHECK(m->mul(x, *m->inverse(x)) == m->one());
      }
    }
    CHECK(units == 6);
  }

  TEST_CASE("the opposite factor multiplies in reverse") {
    auto base = build_ring(RingSpec::matrix(2, RingSpec::prime_field(2)));
    auto p = build_ring(RingSpec::product_with_opposite(RingSpec::matrix(2, RingSpec::prime_field(2))));
    bool differs = false;
    for (Elem a = 0; a < 16; ++a)
      for (Elem b = 0; b < 16; ++b) {
        const Elem dx[2] = {a, b}, dy[2] = {b, a};
        const std::vector<Elem> xy = p->components(p->mul(p->compose(dx), p->compose(dy)));
        CHECK(xy[0] == base->mul(a, b));
        CHECK(xy[1] == base->mul(a, b));  // (b) * (a) in the opposite ring
        differs = differs || base->mul(a, b) != base->mul(b, a);
      }
    CHECK(differs);
  }

  TEST_CASE("render and parse round trip") {
    auto m = build_ring(RingSpec::matrix(2, RingSpec::prime_field(2)));
    for (Elem x = 0; x < m->size(); ++x) CHECK(m->parse(m->render(x)) == x);
    CHECK(m->parse(json(7)) == 7);
  }

  TEST_CASE("spec validation") {
    CHECK_THROWS_AS(RingSpec::prime_field(4).validate(), Error);
    try {
      RingSpec::from_json({{"kind", "prime_field"}, {"p", 9}});
      FAIL("accepted a composite p");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::spec_invalid);
    }
    CHECK_THROWS_AS(build_ring(RingSpec::matrix(3, RingSpec::prime_field(3)), 1000), Error);
  }

  TEST_CASE("involutions") {
    auto m = build_ring(RingSpec::matrix(2, RingSpec::prime_field(2)));
    const Involution t = standard_involution(m, StandardInvolution::transpose);
    for (Elem x = 0; x < m->size(); ++x) {
      const std::vector<Elem> d = m->components(x), e = m->components(t(x));
      CHECK(e[1] == d[2]);
      CHECK(t(t(x)) == x);
    }
    // The identity map is not anti-multiplicative on a noncommutative ring.
    CHECK_THROWS_AS(standard_involution(m, StandardInvolution::identity), Error);
    auto p = build_ring(RingSpec::product_with_opposite(RingSpec::prime_field(3)));
    const Involution s = standard_involution(p, StandardInvolution::swap);
    for (Elem x = 0; x < p->size(); ++x) {
      const std::vector<Elem> d = p->components(x), e = p->components(s(x));
      CHECK(e[0] == d[1]);
      CHECK(e[1] == d[0]);
    }
  }

  TEST_CASE("odd quadruple validation") {
    auto z4 = build_ring(RingSpec::integers_mod(4));
    CHECK_NOTHROW(make_odd_quadruple(z4, standard_involution(z4, StandardInvolution::identity), 1, 2));
    // mu = bar(mu) lambda fails for lambda = -1, mu = 1.
    try {
      make_odd_quadruple(z4, standard_involution(z4, StandardInvolution::identity), 3, 1);
      FAIL("accepted mu != bar(mu) lambda");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::mu_constraint_failed);
    }
    // lambda = 2 is not a unit, so not a symmetry.
    CHECK_FALSE(check_odd_quadruple(standard_involution(z4, StandardInvolution::identity), 2, 0).empty());
    auto q = make_odd_quadruple(z4, standard_involution(z4, StandardInvolution::identity), 3, 0);
    CHECK(q->lambda_pow(-1) == 3);
    CHECK(q->lambda_pow(0) == 1);
  }

  TEST_CASE("element references") {
    auto z4 = build_ring(RingSpec::integers_mod(4));
    CHECK(parse_element_ref(*z4, "minus_one") == 3);
    CHECK(parse_element_ref(*z4, "two") == 2);
    CHECK_THROWS_AS(parse_element_ref(*z4, "three"), Error);
  }
}
