#include "oddform/congruence.hpp"

#include <cmath>
#include <random>

#include "oddform/action.hpp"
#include "oddform/error.hpp"

namespace oddform {

namespace {

json point_json(HPoint p) { return json::array({p.x, p.y}); }

// Every vector whose coordinate at position p ranges over domains[p].
template <typename F>
void for_each_in(const std::vector<std::vector<Elem>>& domains, std::size_t cap, F&& f) {
  double total = 1;
  for (const auto& d : domains) total *= static_cast<double>(d.size());
  if (total > static_cast<double>(cap))
    throw Error(ErrorCode::cap_exceeded, "vector domain of size " + std::to_string(total) + " exceeds cap");
  if (total == 0) return;
  std::vector<std::size_t> idx(domains.size(), 0);
  UVector u(domains.size());
  for (std::size_t p = 0; p < domains.size(); ++p) u[p] = domains[p][0];
  while (true) {
    f(u);
    std::size_t p = 0;
    for (; p < domains.size(); ++p) {
      if (++idx[p] < domains[p].size()) {
        u[p] = domains[p][idx[p]];
        break;
      }
      idx[p] = 0;
      u[p] = domains[p][0];
    }
    if (p == domains.size()) return;
  }
}

std::vector<Elem> all_elements(const FiniteRing& r) {
  std::vector<Elem> v(r.size());
  for (Elem x = 0; x < r.size(); ++x) v[x] = x;
  return v;
}

// Coordinate domains: hb coordinates over `hb`, the 0 coordinate over `zero`.
std::vector<std::vector<Elem>> domains_for(const FormsContext& ctx, const std::vector<Elem>& hb,
                                           const std::vector<Elem>& zero) {
  std::vector<std::vector<Elem>> d(ctx.dim(), hb);
  d[ctx.theta().pos(0)] = zero;
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------

Level::Level(const FormsContext& ctx, ElemSet ideal, PointSet omega) : ctx_(&ctx) {
  const OddFormIdeal cert = OddFormIdeal::certify(ctx.heis(), ctx.delta(), std::move(ideal), std::move(omega));
  ideal_ = cert.ideal();
  omega_ = cert.omega();
  omega_inv_ = inverse_parameter(ctx.quadruple(), omega_);
  omega_min_ = oddform::omega_min(ctx.heis(), ctx.delta(), ideal_);
  sets_ = derived_sets(ctx.quadruple(), ctx.delta(), ideal_, omega_);
}

Level::Level(const FormsContext& ctx, const OddFormIdeal& ideal) : Level(ctx, ideal.ideal(), ideal.omega()) {}

Level Level::absolute(const FormsContext& ctx) { return Level(ctx, ElemSet::all(ctx.ring().size()), ctx.delta()); }

Level Level::trivial(const FormsContext& ctx) {
  ElemSet zero(ctx.ring().size());
  zero.insert(0);
  PointSet origin(ctx.ring().size());
  origin.insert({0, 0});
  return Level(ctx, zero, origin);
}

json Level::to_json() const { return {{"ideal", ideal_.to_json()}, {"omega", omega_.to_json()}}; }

Level level_from_json(const FormsContext& ctx, const json& j) {
  if (!j.is_object() || !j.contains("ideal"))
    throw Error(ErrorCode::config_invalid, "level needs an 'ideal' array");
  const FiniteRing& r = ctx.ring();
  ElemSet ideal = elem_set_from_json(r, j.at("ideal"));
  PointSet omega;
  const json om = j.value("omega", json("min"));
  if (om.is_string()) {
    const std::string s = om.get<std::string>();
    if (s == "min")
      omega = omega_min(ctx.heis(), ctx.delta(), ideal);
    else if (s == "max")
      omega = omega_max(ctx.heis(), ctx.delta(), ideal);
    else
      throw Error(ErrorCode::config_invalid, "omega must be 'min', 'max' or a point list");
  } else {
    omega = point_set_from_json(r, om);
  }
  return Level(ctx, std::move(ideal), std::move(omega));
}

// ---------------------------------------------------------------------------

bool in_M_RDelta(const FormsContext& ctx, const UVector& u) {
  return ctx.delta().first_coordinates().contains(u[ctx.theta().pos(0)]);
}

bool in_M_I(const Level& L, const UVector& u) {
  const Theta th = L.context().theta();
  for (int i : th.hb())
    if (!L.ideal().contains(u[th.pos(i)])) return false;
  return true;
}

bool in_M_IOmega(const Level& L, const UVector& u) {
  return in_M_I(L, u) && L.sets().j_omega.contains(u[L.context().theta().pos(0)]);
}

json Membership::to_json() const { return {{"member", member}, {"violations", violations}}; }

Membership in_principal(const Level& L, const UMatrix& s) {
  const FormsContext& ctx = L.context();
  const FiniteRing& r = ctx.ring();
  const Heisenberg& h = ctx.heis();
  const Theta th = ctx.theta();
  Membership m;
  auto fail = [&](std::string what) {
    if (m.violations.size() < 8) m.violations.push_back(std::move(what));
  };
  for (int i : th.hb())
    for (int j : th.hb()) {
      const Elem d = i == j ? r.sub(s.at(i, j), r.one()) : s.at(i, j);
      if (!L.ideal().contains(d)) fail("hyperbolic entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  for (int j : th.hb())
    if (!L.omega().contains(ctx.form_q(s.column(j)))) fail("q(sigma_*" + std::to_string(j) + ") not in Omega");
  const HPoint c0 = h.minus(ctx.form_q(s.column(0)), {r.one(), 0});
  for (Elem x : L.sets().j_delta.elements())
    if (!L.omega().contains(h.scale(c0, x))) {
      fail("(q(sigma_*0) - (1,0)).x not in Omega for x=" + std::to_string(x));
      break;
    }
  m.member = m.violations.empty();
  return m;
}

bool in_principal_bruteforce(const Level& L, const UMatrix& s, std::size_t cap) {
  const FormsContext& ctx = L.context();
  const FiniteRing& r = ctx.ring();
  const Heisenberg& h = ctx.heis();
  const Theta th = ctx.theta();
  for (int i : th.hb())
    for (int j : th.hb()) {
      const Elem d = i == j ? r.sub(s.at(i, j), r.one()) : s.at(i, j);
      if (!L.ideal().contains(d)) return false;
    }
  bool ok = true;
  for_each_in(domains_for(ctx, all_elements(r), L.sets().j_delta.elements()), cap, [&](const UVector& u) {
    if (ok && !L.omega().contains(h.minus(ctx.form_q(ctx.apply(s, u)), ctx.form_q(u)))) ok = false;
  });
  return ok;
}

json TildeMembership::to_json() const {
  return {{"member", member}, {"conditions", {cond1, cond2, cond3, cond4}}, {"agree", agree()}};
}

TildeMembership in_tilde(const Level& L, const UMatrix& s) { return in_tilde(L, s, L.context().inv(s)); }

TildeMembership in_tilde(const Level& L, const UMatrix& s, const UMatrix& si) {
  const FormsContext& ctx = L.context();
  const FiniteRing& r = ctx.ring();
  const Heisenberg& h = ctx.heis();
  const Theta th = ctx.theta();
  const PointSet& om = L.omega();
  const std::vector<Elem>& jo = L.sets().j_omega.elements();
  TildeMembership t;
  t.cond1 = t.cond2 = t.cond3 = true;
  for (const UMatrix* m : {&s, &si}) {
    const UVector col = m->column(0);
    const HPoint q0 = ctx.form_q(col);
    const HPoint c0 = h.minus(q0, {r.one(), 0});
    for (Elem x : jo) {
      if (!om.contains(h.scale(c0, x))) t.cond2 = false;
      UVector cx = col;
      for (auto& e : cx) e = r.mul(e, x);
      if (!om.contains(h.minus(ctx.form_q(cx), {x, 0}))) t.cond1 = false;
    }
    for (const HPoint& p : om.points()) {
      UVector cx = col;
      for (auto& e : cx) e = r.mul(e, p.x);
      const HPoint img{r.mul(m->at(0, 0), p.x), r.add(p.y, ctx.form_q(cx).y)};
      if (!om.contains(img)) t.cond3 = false;
    }
  }
  (void)th;
  t.cond4 = conj_form_parameter(ctx, s, om, L.ideal()) == om;
  t.member = t.cond2;
  return t;
}

bool in_tilde_bruteforce(const Level& L, const UMatrix& s, std::size_t cap) {
  const FormsContext& ctx = L.context();
  const Heisenberg& h = ctx.heis();
  const UMatrix si = ctx.inv(s);
  bool ok = true;
  for_each_in(domains_for(ctx, L.ideal().elements(), L.sets().j_omega.elements()), cap, [&](const UVector& u) {
    if (!ok) return;
    const HPoint qu = ctx.form_q(u);
    if (!L.omega().contains(h.minus(ctx.form_q(ctx.apply(s, u)), qu)) ||
        !L.omega().contains(h.minus(ctx.form_q(ctx.apply(si, u)), qu)))
      ok = false;
  });
  return ok;
}

json CUMembership::to_json() const {
  json j = {{"member", member}, {"in_tilde", in_tilde}};
  j["witness"] = witness ? json(*witness) : json(nullptr);
  return j;
}

CUMembership in_CU(const Level& L, const UMatrix& s, const std::vector<UMatrix>& eu_gens) {
  const FormsContext& ctx = L.context();
  CUMembership c;
  const UMatrix si = ctx.inv(s);
  c.in_tilde = in_tilde(L, s, si).member;
  if (!c.in_tilde) return c;
  for (std::size_t k = 0; k < eu_gens.size(); ++k) {
    const UMatrix& g = eu_gens[k];
    const UMatrix comm = ctx.multiply(ctx.multiply(s, g), ctx.multiply(si, ctx.inv(g)));
    if (!in_principal(L, comm).member) {
      c.witness = k;
      return c;
    }
  }
  c.member = true;
  return c;
}

std::vector<UMatrix> eu_level_generators(const Level& L) {
  const FormsContext& ctx = L.context();
  const Theta th = ctx.theta();
  const UMatrix id = ctx.identity();
  std::vector<UMatrix> out;
  MatrixSet seen;
  auto add = [&](UMatrix m) {
    if (m != id && seen.insert(m).second) out.push_back(std::move(m));
  };
  for (int i : th.hb())
    for (int j : th.hb()) {
      if (i == j || i == -j) continue;
      for (Elem x : L.ideal().elements())
        if (x != 0) add(ctx.T_short(i, j, x));
    }
  for (int i : th.hb())
    for (const HPoint& a : L.omega(-Theta::eps(i)).points())
      if (a != HPoint{0, 0}) add(ctx.T_extra(i, a));
  return out;
}

SubgroupHandle eu_level_normal_closure(const Level& L, const std::vector<UMatrix>& conjugators, std::size_t cap) {
  const FormsContext& ctx = L.context();
  SubgroupHandle hdl = SubgroupHandle::from_generators(ctx, eu_level_generators(L), cap, "EU(level)");
  if (hdl.truncated()) return hdl;
  std::vector<UMatrix> cinv;
  for (const UMatrix& c : conjugators) cinv.push_back(ctx.inv(c));
  // The generator list grows while we walk it; conjugating every generator
  // by every conjugator closes the subgroup under the conjugators.
  for (std::size_t k = 0; k < hdl.generators().size(); ++k) {
    for (std::size_t c = 0; c < conjugators.size(); ++c) {
      const UMatrix g = hdl.generators()[k];
      UMatrix m = ctx.multiply(ctx.multiply(conjugators[c], g), cinv[c]);
      if (hdl.contains(m)) continue;
      if (!hdl.extend(m)) return hdl;
    }
  }
  return hdl;
}

// ---------------------------------------------------------------------------

namespace {

UVector random_vector(const FormsContext& ctx, std::mt19937_64& rng, const std::vector<Elem>& hb,
                      const std::vector<Elem>& zero) {
  UVector u(ctx.dim());
  std::uniform_int_distribution<std::size_t> ph(0, hb.size() - 1), pz(0, zero.size() - 1);
  for (std::size_t p = 0; p < u.size(); ++p) u[p] = hb[ph(rng)];
  u[ctx.theta().pos(0)] = zero[pz(rng)];
  return u;
}

json vec_json(const UVector& u) { return json(u); }

}  // namespace

std::vector<CheckReport> verify_q_sum_defect(const Level& L, std::uint64_t seed, std::size_t samples) {
  const FormsContext& ctx = L.context();
  const FiniteRing& r = ctx.ring();
  const Heisenberg& h = ctx.heis();
  const Theta th = ctx.theta();
  CheckReport cong("q-sum-congruence"), defect("q-sum-defect");
  const std::vector<Elem> all = all_elements(r);
  const std::vector<Elem>& iel = L.ideal().elements();

  auto check = [&](const UVector& u, const UVector& v) {
    UVector w(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) w[p] = r.add(u[p], v[p]);
    const HPoint rhs = h.plus(h.plus(ctx.form_q(u), ctx.form_q(v)), {0, ctx.form_b(u, v)});
    const HPoint d = h.minus(ctx.form_q(w), rhs);
    Elem s = 0;
    for (int i = 1; i <= th.n; ++i) s = r.add(s, r.mul(ctx.bar(v[th.pos(i)]), u[th.pos(-i)]));
    const HPoint expect{0, r.sub(s, r.mul(ctx.bar(s), ctx.lam(1)))};
    defect.record(d == expect, [&] { return json{{"u", vec_json(u)}, {"v", vec_json(v)}, {"defect", point_json(d)}}; });
    if (in_M_I(L, u) || in_M_I(L, v))
      cong.record(L.omega_min().contains(d),
                  [&] { return json{{"u", vec_json(u)}, {"v", vec_json(v)}, {"defect", point_json(d)}}; });
  };

  const double total = std::pow(static_cast<double>(r.size()), 2.0 * static_cast<double>(ctx.dim()));
  if (total <= static_cast<double>(samples)) {
    std::vector<UVector> vs;
    for_each_in(domains_for(ctx, all, all), samples, [&](const UVector& u) { vs.push_back(u); });
    for (const UVector& u : vs)
      for (const UVector& v : vs) check(u, v);
  } else {
    cong.exhaustive = defect.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
      UVector u = random_vector(ctx, rng, k % 2 ? iel : all, all);
      UVector v = random_vector(ctx, rng, k % 2 ? all : iel, all);
      check(u, v);
      check(random_vector(ctx, rng, all, all), random_vector(ctx, rng, all, all));
    }
  }
  return {cong, defect};
}

CheckReport verify_q_shift(const Level& L, const std::vector<UMatrix>& group, std::uint64_t seed,
                           std::size_t samples) {
  const FormsContext& ctx = L.context();
  const FiniteRing& r = ctx.ring();
  const Heisenberg& h = ctx.heis();
  CheckReport rep("q-shift");
  const std::vector<Elem> all = all_elements(r);
  std::vector<UVector> us;
  const double musize = std::pow(static_cast<double>(L.ideal().size()), 2.0 * ctx.n()) * static_cast<double>(r.size());
  std::mt19937_64 rng(seed);
  if (musize * static_cast<double>(group.size()) <= static_cast<double>(samples) * 50) {
    for_each_in(domains_for(ctx, L.ideal().elements(), all), 1u << 22, [&](const UVector& u) { us.push_back(u); });
  } else {
    rep.exhaustive = false;
    const std::size_t per = std::max<std::size_t>(1, samples / std::max<std::size_t>(1, group.size()));
    for (std::size_t k = 0; k < per; ++k) us.push_back(random_vector(ctx, rng, L.ideal().elements(), all));
  }
  for (const UMatrix& s : group) {
    const HPoint c0 = h.minus(ctx.form_q(s.column(0)), {r.one(), 0});
    for (const UVector& u : us) {
      const HPoint lhs = h.minus(ctx.form_q(ctx.apply(s, u)), ctx.form_q(u));
      const HPoint rhs = h.scale(c0, u[ctx.theta().pos(0)]);
      rep.record(L.omega_min().contains(h.minus(lhs, rhs)), [&] {
        return json{{"sigma", matrix_to_json(ctx, s)}, {"u", vec_json(u)}, {"lhs", point_json(lhs)},
                    {"rhs", point_json(rhs)}};
      });
    }
  }
  return rep;
}

CheckReport verify_tilde_normalizes(const Level& L, const std::vector<UMatrix>& group) {
  const FormsContext& ctx = L.context();
  CheckReport rep("tilde-normalizes");
  std::vector<UMatrix> principal, tilde, tilde_inv;
  for (const UMatrix& g : group) {
    if (in_principal(L, g).member) principal.push_back(g);
    const UMatrix gi = ctx.inv(g);
    if (in_tilde(L, g, gi).member) {
      tilde.push_back(g);
      tilde_inv.push_back(gi);
    }
  }
  for (std::size_t t = 0; t < tilde.size(); ++t)
    for (const UMatrix& s : principal) {
      const UMatrix c = ctx.multiply(ctx.multiply(tilde[t], s), tilde_inv[t]);
      rep.record(in_principal(L, c).member, [&] {
        return json{{"tau", matrix_to_json(ctx, tilde[t])}, {"sigma", matrix_to_json(ctx, s)}};
      });
    }
  rep.notes = {{"group", group.size()}, {"principal", principal.size()}, {"tilde", tilde.size()}};
  return rep;
}

CheckReport verify_omega_max_level(const FormsContext& ctx, const ElemSet& ideal, const std::vector<UMatrix>& samples) {
  const FiniteRing& r = ctx.ring();
  const Theta th = ctx.theta();
  const Level L(ctx, ideal, omega_max(ctx.heis(), ctx.delta(), ideal));
  const DerivedSets& d = L.sets();
  CheckReport rep("omega-max-level");
  std::size_t members = 0;
  for (const UMatrix& s : samples) {
    const bool principal = in_principal(L, s).member;
    bool hb = true, row0 = true, col0 = true;
    for (int i : th.hb())
      for (int j : th.hb())
        if (!ideal.contains(i == j ? r.sub(s.at(i, j), r.one()) : s.at(i, j))) hb = false;
    for (int j : th.hb())
      if (!d.i_tilde.contains(s.at(0, j))) row0 = false;
    if (!d.i_tilde0.contains(r.sub(s.at(0, 0), r.one()))) row0 = false;
    for (int i : th.hb())
      if (!d.i0.contains(s.at(i, 0))) col0 = false;
    const bool coord = hb && row0;
    if (principal) ++members;
    rep.record(principal == coord && (!principal || col0), [&] {
      return json{{"sigma", matrix_to_json(ctx, s)}, {"principal", principal}, {"coordinates", coord},
                  {"column0", col0}};
    });
  }
  rep.notes = {{"members", members}};
  return rep;
}

std::vector<CheckReport> verify_membership_chain(const Level& L, const std::vector<UMatrix>& elements,
                                                 bool with_oracles) {
  const FormsContext& ctx = L.context();
  CheckReport p36("principal-vs-bruteforce"), t41("tilde-vs-bruteforce"), four("tilde-four-conditions"),
      pt("principal-implies-tilde"), tu("tilde-implies-unitary"), eut("elementary-in-tilde"),
      pre("preelementary-in-principal"), pcu("principal-in-CU");
  const std::vector<UMatrix> eu = ctx.elementary_generators();
  for (const UMatrix& s : elements) {
    const UMatrix si = ctx.inv(s);
    const bool p = in_principal(L, s).member;
    const TildeMembership t = in_tilde(L, s, si);
    auto wit = [&] { return json{{"sigma", matrix_to_json(ctx, s)}, {"tilde", t.to_json()}, {"principal", p}}; };
    four.record(t.agree(), wit);
    pt.record(!p || t.member, wit);
    tu.record(!t.member || ctx.is_unitary(s, si).unitary, wit);
    if (p) pcu.record(in_CU(L, s, eu).member, wit);
    if (with_oracles) {
      p36.record(p == in_principal_bruteforce(L, s), wit);
      t41.record(t.member == in_tilde_bruteforce(L, s), wit);
    }
  }
  for (const UMatrix& g : eu)
    eut.record(in_tilde(L, g).member, [&] { return json{{"generator", matrix_to_json(ctx, g)}}; });
  for (const UMatrix& g : eu_level_generators(L))
    pre.record(in_principal(L, g).member, [&] { return json{{"generator", matrix_to_json(ctx, g)}}; });
  std::vector<CheckReport> out{four, pt, tu, pcu, eut, pre};
  if (with_oracles) {
    out.insert(out.begin(), t41);
    out.insert(out.begin(), p36);
  }
  return out;
}

// ---------------------------------------------------------------------------

ElemSet left_ideal_generated(const FiniteRing& r, const std::vector<Elem>& gens) {
  std::vector<Elem> all;
  for (Elem g : gens)
    for (Elem a = 0; a < r.size(); ++a) all.push_back(r.mul(a, g));
  return additive_closure(r, all);
}

ElemSet j_sigma(const FormsContext& ctx, const UMatrix& s, const UMatrix& si) {
  const FiniteRing& r = ctx.ring();
  const Theta th = ctx.theta();
  std::vector<Elem> gens;
  for (int k : th.hb())
    for (int l : th.hb())
      if (k != l) {
        gens.push_back(s.at(k, l));
        gens.push_back(si.at(k, l));
      }
  const ElemSet jd = ctx.delta().first_coordinates();
  for (Elem a : jd.elements()) {
    const Elem am = r.mul(ctx.bar(a), ctx.quadruple().mu());
    for (int l : th.hb()) {
      gens.push_back(r.mul(am, s.at(0, l)));
      gens.push_back(r.mul(am, si.at(0, l)));
    }
  }
  return ideal_generated(r, gens);
}

ElemSet j_prime_sigma(const FormsContext& ctx, const UMatrix& s, const UMatrix& si) {
  std::vector<Elem> gens;
  for (int k : ctx.theta().hb()) {
    gens.push_back(s.at(k, 0));
    gens.push_back(si.at(k, 0));
  }
  return left_ideal_generated(ctx.ring(), gens);
}

json RootMove::to_json() const {
  if (extra) return {{"kind", "extra"}, {"i", i}, {"a", point_json(a)}};
  return {{"kind", "short"}, {"i", i}, {"j", j}, {"x", x}};
}

CheckReport verify_commutator_columns(const FormsContext& ctx, const UMatrix& s, const RootMove& mv) {
  const FiniteRing& r = ctx.ring();
  const Heisenberg& h = ctx.heis();
  const Theta th = ctx.theta();
  const Elem one = r.one();
  const Elem lam = ctx.lam(1);
  const Elem mu = ctx.quadruple().mu();
  const UMatrix si = ctx.inv(s);
  const ElemSet J = j_sigma(ctx, s, si);
  const ElemSet Jp = j_prime_sigma(ctx, s, si);
  std::vector<Elem> sum_gens = J.elements();
  sum_gens.insert(sum_gens.end(), Jp.elements().begin(), Jp.elements().end());
  const ElemSet JJp = additive_closure(r, sum_gens);

  // {w - bar(w) lambda | w in S}
  auto twisted = [&](const ElemSet& S) {
    ElemSet out(r.size());
    for (Elem w : S.elements()) out.insert(r.sub(w, r.mul(ctx.bar(w), lam)));
    return out;
  };
  const ElemSet YJ = twisted(J), YJp = twisted(Jp), YJJp = twisted(JJp);
  auto sp = [&](int k, int l) { return si.at(k, l); };
  auto qs = [&](int k) { return ctx.form_q(s.column(k)); };
  auto sc = [&](HPoint a, Elem t) { return h.scale(a, t); };
  auto sum = [&](std::initializer_list<HPoint> terms) {
    HPoint acc{0, 0};
    for (const HPoint& t : terms) acc = h.plus(acc, t);
    return acc;
  };
  auto zt = [&](Elem w) { return HPoint{0, r.sub(w, r.mul(ctx.bar(w), lam))}; };

  CheckReport rep("commutator-columns");
  rep.notes = {{"move", mv.to_json()}, {"J_size", J.size()}, {"J_prime_size", Jp.size()}};
  auto check = [&](const char* identity, int k, HPoint lhs, HPoint rhs, const ElemSet& Y) {
    const HPoint res = h.minus(lhs, rhs);
    rep.record(res.x == 0 && Y.contains(res.y), [&] {
      return json{{"identity", identity}, {"k", k},          {"move", mv.to_json()},
                  {"lhs", point_json(lhs)}, {"rhs", point_json(rhs)}, {"residual", point_json(res)}};
    });
  };

  if (!mv.extra) {
    const int i = mv.i, j = mv.j;
    const Elem x = mv.x;
    const int ei = Theta::eps(i), ej = Theta::eps(j);
    const UMatrix T = ctx.T_short(i, j, x);
    const UMatrix tau = ctx.multiply(ctx.multiply(s, T), ctx.multiply(si, ctx.T_short(i, j, r.neg(x))));
    const Elem xt = r.neg(r.mul(r.mul(ctx.lam((ej - 1) / 2), ctx.bar(x)), ctx.lam((1 - ei) / 2)));
    auto qt = [&](int k) { return ctx.form_q(tau.column(k)); };
    for (int k : th.all()) {
      if (k == j) {
        check("short-j", k, qt(k), sum({sc(qs(i), r.mul(x, sp(j, j))), sc(qs(-j), r.mul(xt, sp(-i, j))),
                                        sc(qt(i), r.neg(x))}),
              YJ);
      } else if (k == -i) {
        check("short-minus-i", k, qt(k),
              sum({sc(qs(i), r.mul(x, sp(j, -i))), sc(qs(-j), r.mul(xt, sp(-i, -i))), sc(qt(-j), r.neg(xt))}), YJ);
      } else {
        check("short-generic", k, qt(k),
              sum({HPoint{k == 0 ? one : 0, 0}, sc(qs(i), r.mul(x, sp(j, k))), sc(qs(-j), r.mul(xt, sp(-i, k)))}),
              k == 0 ? YJp : YJ);
      }
    }
    return rep;
  }

  const int i = mv.i;
  const int ei = Theta::eps(i);
  const Elem y = mv.a.x, z = mv.a.y;
  const UMatrix T = ctx.T_extra(i, mv.a);
  const UMatrix rho = ctx.multiply(ctx.multiply(s, T), ctx.multiply(si, ctx.inv(T)));
  auto qr = [&](int k) { return ctx.form_q(rho.column(k)); };
  const Elem lp = ctx.lam(-(1 + ei) / 2);
  const Elem yh = r.neg(r.mul(r.mul(lp, ctx.bar(y)), mu));
  const Elem zh = r.mul(r.mul(lp, ctx.bar(z)), ctx.lam((1 - ei) / 2));
  auto a_k = [&](int k) {
    return k >= 0 ? HPoint{y, r.mul(ctx.lam((ei + 1) / 2), z)} : HPoint{y, r.mul(ctx.bar(z), ctx.lam((1 - ei) / 2))};
  };
  const HPoint q0m = h.minus(qs(0), {one, 0});
  for (int k : th.all()) {
    if (k == 0) {
      check("extra-zero", k, qr(0),
            sum({HPoint{one, 0}, sc(q0m, r.mul(y, sp(-i, 0))), sc(qs(i), r.mul(yh, sp(0, 0))),
                 sc(qs(i), r.mul(z, sp(-i, 0))), sc(qr(i), r.neg(yh)), sc(a_k(0), sp(-i, 0))}),
            YJJp);
    } else if (k == -i) {
      const Elem sm = r.sub(sp(-i, -i), one);
      const Elem w_b = ei > 0 ? r.mul(ctx.bar(z), sm) : r.mul(z, sm);
      const HPoint b = zt(w_b);
      const HPoint c = ei > 0 ? HPoint{y, r.mul(lam, z)} : HPoint{y, z};
      const HPoint d = ei > 0 ? zt(r.mul(r.mul(r.mul(r.mul(ctx.bar(sp(-i, -i)), ctx.bar(y)), ctx.bar(s.at(0, 0))), mu), y))
                              : HPoint{0, 0};
      const Elem s0y = r.mul(sp(-i, 0), y);
      check("extra-minus-i", k, qr(k),
            sum({sc(q0m, r.mul(y, sp(-i, -i))), sc(qs(i), r.mul(yh, sp(0, -i))), sc(qs(i), r.mul(z, sp(-i, -i))),
                 sc(q0m, r.neg(r.mul(y, s0y))), sc(qs(i), r.neg(r.mul(r.mul(yh, sp(0, 0)), y))),
                 sc(qs(i), r.neg(r.mul(z, s0y))), sc(qr(i), zh), sc(a_k(-i), sm), b, sc(c, r.neg(s0y)), d}),
            YJ);
    } else {
      check("extra-generic", k, qr(k),
            sum({sc(q0m, r.mul(y, sp(-i, k))), sc(qs(i), r.mul(yh, sp(0, k))), sc(qs(i), r.mul(z, sp(-i, k))),
                 sc(a_k(k), sp(-i, k))}),
            YJ);
    }
  }
  return rep;
}

}  // namespace oddform
