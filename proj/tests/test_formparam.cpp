#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oddform/formparam.hpp"

using namespace oddform;

namespace {

struct Raw {
  std::shared_ptr<const OddQuadruple> q;
  const FiniteRing& r() const { return q->ring(); }
};

Raw commutative(const RingSpec& s, Elem lambda, Elem mu) {
  auto ring = build_ring(s);
  return {make_odd_quadruple(ring, standard_involution(ring, StandardInvolution::identity), lambda, mu)};
}

// Direct formulas, independent of Heisenberg.
HPoint add(const Raw& w, HPoint a, HPoint b) {
  const FiniteRing& r = w.r();
  return {r.add(a.x, b.x), r.sub(r.add(a.y, b.y), r.mul(r.mul(w.q->bar(a.x), w.q->mu()), b.x))};
}

bool brute_form_parameter(const Raw& w, const std::vector<HPoint>& pts, std::uint32_t mask) {
  const FiniteRing& r = w.r();
  const std::size_t n = r.size();
  auto in = [&](HPoint p) { return (mask >> (p.x * n + p.y)) & 1u; };
  for (Elem x = 0; x < n; ++x) {  // delta_min <= S
    const HPoint m{0, r.sub(x, r.mul(w.q->bar(x), w.q->lambda()))};
    if (!in(m)) return false;
  }
  for (const HPoint& a : pts) {
    if (!in(a)) continue;
    // S <= delta_max = ker tr
    const Elem tr = r.add(r.add(r.mul(r.mul(w.q->bar(a.x), w.q->mu()), a.x), a.y), r.mul(w.q->bar(a.y), w.q->lambda()));
    if (tr != 0) return false;
    for (Elem s = 0; s < n; ++s)
      if (!in({r.mul(a.x, s), r.mul(r.mul(w.q->bar(s), a.y), s)})) return false;
    for (const HPoint& b : pts)
      if (in(b) && !in(add(w, a, b))) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("formparam") {
  TEST_CASE("Heisenberg negation and commutator shape") {
    Raw w = commutative(RingSpec::integers_mod(4), 1, 2);
    const Heisenberg h(w.q);
    const FiniteRing& r = w.r();
    for (Elem x = 0; x < 4; ++x)
      for (Elem y = 0; y < 4; ++y) {
        const HPoint a{x, y};
        CHECK(h.plus(a, h.neg(a)) == HPoint{0, 0});
        CHECK(h.neg(a) == HPoint{r.neg(x), r.sub(r.neg(y), r.mul(r.mul(x, 2), x))});
        for (Elem u = 0; u < 4; ++u) CHECK(h.commutator(a, {u, 1}).x == 0);
      }
  }

  TEST_CASE("form parameters over F2 match a subset scan") {
    Raw w = commutative(RingSpec::prime_field(2), 1, 0);
    const Heisenberg h(w.q);
    std::vector<HPoint> pts;
    for (Elem x = 0; x < 2; ++x)
      for (Elem y = 0; y < 2; ++y) pts.push_back({x, y});
    std::size_t brute = 0;
    for (std::uint32_t mask = 0; mask < 16; ++mask) brute += brute_form_parameter(w, pts, mask);
    CHECK(enumerate_form_parameters(h).size() == brute);
  }

  TEST_CASE("form parameters over Z/4 with mu = 2 match a subset scan") {
    Raw w = commutative(RingSpec::integers_mod(4), 1, 2);
    const Heisenberg h(w.q);
    std::vector<HPoint> pts;
    for (Elem x = 0; x < 4; ++x)
      for (Elem y = 0; y < 4; ++y) pts.push_back({x, y});
    std::size_t brute = 0;
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) brute += brute_form_parameter(w, pts, mask);
    const auto all = enumerate_form_parameters(h);
    CHECK(all.size() == brute);
    CHECK(brute > 1);
  }

  TEST_CASE("extremes") {
    Raw w = commutative(RingSpec::integers_mod(4), 1, 2);
    const Heisenberg h(w.q);
    const PointSet lo = delta_min(h), hi = delta_max(h);
    CHECK(lo.subset_of(hi));
    for (const HPoint& a : hi.points()) CHECK(h.trace(a) == 0);
    CHECK_NOTHROW(FormParameter::certify(h, lo));
    CHECK_NOTHROW(FormParameter::certify(h, hi));
    // Delta_min is trivial here; (0, 1) has trace 2.
    PointSet bad(4);
    bad.insert({0, 0});
    bad.insert({0, 1});
    CHECK(h.trace({0, 1}) != 0);
    CHECK_THROWS_AS(FormParameter::certify(h, bad), Error);
  }

  TEST_CASE("inverse parameter is involutive") {
    auto ring = build_ring(RingSpec::matrix(2, RingSpec::prime_field(2)));
    auto q = make_odd_quadruple(ring, standard_involution(ring, StandardInvolution::transpose), ring->one(), 0);
    const Heisenberg h(q);
    const PointSet d = delta_max(h);
    auto qi = inverse_quadruple(*q);
    const PointSet di = inverse_parameter(*q, d);
    CHECK_NOTHROW(FormParameter::certify(Heisenberg(qi), di));
    CHECK(inverse_parameter(*qi, di) == d);
  }

  TEST_CASE("relative parameters for I = 0 over M2(F2) are the right ideals times 0") {
    auto ring = build_ring(RingSpec::matrix(2, RingSpec::prime_field(2)));
    const FiniteRing& r = *ring;
    auto q = make_odd_quadruple(ring, standard_involution(ring, StandardInvolution::transpose), r.one(), 0);
    const Heisenberg h(q);
    // Right ideals by scanning all subsets of R.
    std::set<std::vector<Elem>> right;
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
      if (!(mask & 1u)) continue;
      bool ok = true;
      for (Elem a = 0; a < 16 && ok; ++a) {
        if (!((mask >> a) & 1u)) continue;
        for (Elem b = 0; b < 16 && ok; ++b)
          if (((mask >> b) & 1u) && !((mask >> r.add(a, b)) & 1u)) ok = false;
        for (Elem s = 0; s < 16 && ok; ++s)
          if (!((mask >> r.mul(a, s)) & 1u)) ok = false;
      }
      if (!ok) continue;
      std::vector<Elem> members;
      for (Elem a = 0; a < 16; ++a)
        if ((mask >> a) & 1u) members.push_back(a);
      right.insert(members);
    }
    CHECK(right.size() == 5);

    ElemSet zero(16);
    zero.insert(0);
    const auto rel = enumerate_relative_form_parameters(h, delta_max(h), zero);
    REQUIRE(rel.size() == 5);
    std::set<std::vector<Elem>> got;
    for (const PointSet& p : rel) {
      CHECK(p.zero_fiber().size() == 1);
      CHECK(p.size() == p.first_coordinates().size());
      got.insert(p.first_coordinates().elements());
    }
    CHECK(got == right);
  }

  TEST_CASE("odd form ideal certification") {
    Raw w = commutative(RingSpec::integers_mod(4), 1, 2);
    const Heisenberg h(w.q);
    const PointSet d = delta_max(h);
    const ElemSet two = ideal_generated(w.r(), {2});
    CHECK(two.size() == 2);
    CHECK_NOTHROW(OddFormIdeal::certify(h, d, two, omega_min(h, d, two)));
    CHECK_NOTHROW(OddFormIdeal::certify(h, d, two, omega_max(h, d, two)));
    // Omega_max of the whole ring exceeds Omega_max of (2).
    const ElemSet all = ElemSet::all(4);
    CHECK_THROWS_AS(OddFormIdeal::certify(h, d, two, omega_max(h, d, all)), Error);
    CHECK(omega_min(h, d, two).subset_of(omega_max(h, d, two)));
  }

  TEST_CASE("defined ideals") {
    Raw w = commutative(RingSpec::integers_mod(4), 1, 2);
    const Heisenberg h(w.q);
    const PointSet d = delta_max(h);
    const OddFormIdeal a = defined_ideal(h, d, {2});
    CHECK(a.ideal().size() == 2);
    CHECK(a.omega() == omega_min(h, d, a.ideal()));
    const PointDefinedIdeal b = defined_ideal_from_points(h, d, d.points());
    CHECK(b.ideal.ideal().size() == 4);
    CHECK(b.ideal.omega().subset_of(d));
  }

  TEST_CASE("identity reports pass") {
    for (const auto& cfg : {fixtures::f2(1), fixtures::z4(1), fixtures::m2f2(1)}) {
      const Instance inst = fixtures::load(cfg);
      const FormsContext& ctx = *inst.ctx;
      for (const CheckReport& rep : verify_heisenberg_identities(ctx.heis(), ctx.heis(-1), ctx.delta())) {
        INFO(rep.id);
        CHECK(rep.passed());
        CHECK(rep.checked > 0);
      }
    }
  }
}
