#include "oddform/action.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "oddform/error.hpp"
#include "oddform/sandwich.hpp"

namespace oddform {

PointSet conj_form_parameter(const FormsContext& ctx, const UMatrix& sigma, const PointSet& omega,
                             const ElemSet& ideal) {
  const Heisenberg& h = ctx.heis();
  const HPoint c0 = h.minus(ctx.form_q(sigma.column(0)), {ctx.ring().one(), 0});
  std::vector<HPoint> gens;
  for (const HPoint& p : omega.points()) gens.push_back(h.plus(h.scale(c0, p.x), p));
  for (const HPoint& p : omega_min(h, ctx.delta(), ideal).points()) gens.push_back(p);
  return close_subgroup(h, gens);
}

PointSet conj_form_parameter_big(const FormsContext& ctx, const UMatrix& sigma, const PointSet& omega,
                                 const ElemSet& ideal, std::size_t cap) {
  const FiniteRing& r = ctx.ring();
  const Heisenberg& h = ctx.heis();
  const Theta th = ctx.theta();
  const double total = std::pow(static_cast<double>(ideal.size()), 2.0 * ctx.n()) * static_cast<double>(r.size()) *
                       static_cast<double>(r.size());
  if (total > static_cast<double>(cap)) throw Error(ErrorCode::cap_exceeded, "big quasimodule route exceeds cap");
  PointSet out(r.size());
  const std::vector<Elem>& iel = ideal.elements();
  // M(I) x R, coordinate by coordinate.
  std::vector<std::size_t> idx(ctx.dim(), 0);
  UVector u(ctx.dim(), 0);
  const std::size_t p0 = th.pos(0);
  auto dom = [&](std::size_t p) { return p == p0 ? r.size() : iel.size(); };
  auto val = [&](std::size_t p, std::size_t k) { return p == p0 ? static_cast<Elem>(k) : iel[k]; };
  while (true) {
    for (std::size_t p = 0; p < u.size(); ++p) u[p] = val(p, idx[p]);
    const HPoint qu = ctx.form_q(u);
    const HPoint qs = ctx.form_q(ctx.apply(sigma, u));
    for (Elem x = 0; x < r.size(); ++x)
      if (omega.contains(h.plus(qu, {0, x}))) out.insert(h.plus(qs, {0, x}));
    std::size_t p = 0;
    for (; p < idx.size(); ++p) {
      if (++idx[p] < dom(p)) break;
      idx[p] = 0;
    }
    if (p == idx.size()) break;
  }
  return out;
}

std::optional<std::size_t> ROFPLattice::index_of(const PointSet& omega) const {
  for (std::size_t k = 0; k < params.size(); ++k)
    if (params[k] == omega) return k;
  return std::nullopt;
}

json ROFPLattice::to_json() const {
  json ps = json::array();
  for (std::size_t k = 0; k < params.size(); ++k)
    ps.push_back({{"index", k}, {"size", params[k].size()}, {"J", params[k].first_coordinates().to_json()},
                  {"points", params[k].to_json()}});
  return {{"ideal", ideal.to_json()}, {"parameters", ps}};
}

ROFPLattice rofp_lattice(const FormsContext& ctx, const ElemSet& ideal, std::size_t cap) {
  return {ideal, enumerate_relative_form_parameters(ctx.heis(), ctx.delta(), ideal, cap)};
}

namespace {

// Images of every lattice member under sigma, as lattice indices (or -1).
std::vector<long> image_row(const FormsContext& ctx, const ROFPLattice& lat, const UMatrix& s) {
  std::vector<long> row;
  for (const PointSet& om : lat.params) {
    const auto k = lat.index_of(conj_form_parameter(ctx, s, om, lat.ideal));
    row.push_back(k ? static_cast<long>(*k) : -1);
  }
  return row;
}

}  // namespace

std::vector<CheckReport> verify_action_laws(const FormsContext& ctx, const ROFPLattice& lat,
                                            const std::vector<UMatrix>& group, std::uint64_t seed,
                                            std::size_t samples) {
  CheckReport ident("action-identity"), closed("action-closed"), comp("action-composition"), inv("action-inverse"),
      mono("action-monotone"), ext("action-extremes"), big("action-big-quasimodule"), agree("tilde-agreement");
  const std::size_t L = lat.params.size();
  std::map<UMatrix, std::vector<long>> rows;
  auto row_of = [&](const UMatrix& s) -> const std::vector<long>& {
    auto it = rows.find(s);
    if (it == rows.end()) it = rows.emplace(s, image_row(ctx, lat, s)).first;
    return it->second;
  };
  auto mat = [&](const UMatrix& s) { return matrix_to_json(ctx, s); };

  const auto& id_row = row_of(ctx.identity());
  for (std::size_t a = 0; a < L; ++a) ident.record(id_row[a] == static_cast<long>(a), [&] { return json(a); });

  // Extremes: omega_min is the smallest member, omega_max the largest.
  std::size_t lo = 0, hi = 0;
  for (std::size_t a = 0; a < L; ++a) {
    if (lat.params[a].size() < lat.params[lo].size()) lo = a;
    if (lat.params[a].size() > lat.params[hi].size()) hi = a;
  }

  const bool big_ok = std::pow(static_cast<double>(lat.ideal.size()), 2.0 * ctx.n()) *
                          static_cast<double>(ctx.ring().size() * ctx.ring().size()) <=
                      double(1u << 16);
  for (const UMatrix& s : group) {
    const auto& row = row_of(s);
    const UMatrix si = ctx.inv(s);
    const auto& irow = row_of(si);
    for (std::size_t a = 0; a < L; ++a) {
      closed.record(row[a] >= 0, [&] { return json{{"sigma", mat(s)}, {"omega", a}}; });
      if (row[a] < 0) continue;
      inv.record(irow[static_cast<std::size_t>(row[a])] == static_cast<long>(a),
                 [&] { return json{{"sigma", mat(s)}, {"omega", a}}; });
      for (std::size_t b = 0; b < L; ++b)
        if (lat.params[a].subset_of(lat.params[b]) && row[b] >= 0)
          mono.record(lat.params[static_cast<std::size_t>(row[a])].subset_of(lat.params[static_cast<std::size_t>(row[b])]),
                      [&] { return json{{"sigma", mat(s)}, {"a", a}, {"b", b}}; });
      const Level lev(ctx, lat.ideal, lat.params[a]);
      const TildeMembership t = in_tilde(lev, s, si);
      agree.record(t.agree() && t.member == (row[a] == static_cast<long>(a)),
                 [&] { return json{{"sigma", mat(s)}, {"omega", a}, {"tilde", t.to_json()}}; });
      if (big_ok) {
        const PointSet viaBig = conj_form_parameter_big(ctx, s, lat.params[a], lat.ideal);
        big.record(viaBig == lat.params[static_cast<std::size_t>(row[a])],
                   [&] { return json{{"sigma", mat(s)}, {"omega", a}}; });
      }
    }
    ext.record(row[lo] == static_cast<long>(lo) && row[hi] == static_cast<long>(hi),
               [&] { return json{{"sigma", mat(s)}}; });
  }
  if (!big_ok) big.notes = {{"skipped", "M(I) x R too large"}};

  // Composition over all pairs when small, sampled pairs otherwise.
  const std::size_t pairs = group.size() * group.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, group.empty() ? 0 : group.size() - 1);
  const bool all_pairs = pairs <= samples;
  comp.exhaustive = all_pairs;
  const std::size_t count = all_pairs ? pairs : samples;
  for (std::size_t k = 0; k < count && !group.empty(); ++k) {
    const std::size_t i = all_pairs ? k / group.size() : pick(rng);
    const std::size_t j = all_pairs ? k % group.size() : pick(rng);
    const auto& rs = row_of(group[i]);
    const auto& rt = row_of(group[j]);
    const std::vector<long> rst = row_of(ctx.multiply(group[i], group[j]));
    for (std::size_t a = 0; a < L; ++a) {
      const long via = rt[a] >= 0 ? rs[static_cast<std::size_t>(rt[a])] : -2;
      comp.record(rst[a] == via, [&] { return json{{"sigma", mat(group[i])}, {"tau", mat(group[j])}, {"omega", a}}; });
    }
  }
  return {ident, closed, comp, inv, mono, ext, big, agree};
}

CheckReport conjugate_level_check(const FormsContext& ctx, const UMatrix& sigma, const Level& level,
                            const std::vector<UMatrix>* group) {
  CheckReport rep("conjugate-level");
  const PointSet moved = conj_form_parameter(ctx, sigma, level.omega(), level.ideal());
  std::optional<Level> target;
  try {
    target.emplace(ctx, level.ideal(), moved);
  } catch (const Error& e) {
    rep.record(false, [&] { return json{{"error", e.what()}}; });
    return rep;
  }
  const UMatrix si = ctx.inv(sigma);
  auto mat = [&](const UMatrix& s) { return matrix_to_json(ctx, s); };
  if (group) {
    MatrixSet lhs, rhs;
    for (const UMatrix& g : *group) {
      if (in_principal(level, g).member) lhs.insert(ctx.multiply(ctx.multiply(sigma, g), si));
      if (in_principal(*target, g).member) rhs.insert(g);
    }
    for (const UMatrix& g : lhs) rep.record(rhs.count(g) > 0, [&] { return json{{"extra_in_conjugate", mat(g)}}; });
    for (const UMatrix& g : rhs) rep.record(lhs.count(g) > 0, [&] { return json{{"missing_in_conjugate", mat(g)}}; });
    rep.notes = {{"mode", "enumerated"}, {"size", lhs.size()}};
  } else {
    rep.exhaustive = false;
    for (const UMatrix& g : eu_level_generators(level)) {
      const UMatrix c = ctx.multiply(ctx.multiply(sigma, g), si);
      rep.record(in_principal(*target, c).member, [&] { return json{{"forward", mat(g)}}; });
    }
    for (const UMatrix& g : eu_level_generators(*target)) {
      const UMatrix c = ctx.multiply(ctx.multiply(si, g), sigma);
      rep.record(in_principal(level, c).member, [&] { return json{{"backward", mat(g)}}; });
    }
    rep.notes = {{"mode", "preelementary generators"}};
  }
  rep.notes["moved_is_same"] = moved == level.omega();
  return rep;
}

json OrbitPartition::to_json(const ROFPLattice& lattice) const {
  json bs = json::array();
  for (const auto& b : blocks) {
    json sizes = json::array();
    for (std::size_t k : b) sizes.push_back(lattice.params[k].size());
    bs.push_back({{"members", b}, {"sizes", sizes}});
  }
  json ls = json::array();
  for (const auto& l : links) ls.push_back({{"from", l.from}, {"to", l.to}, {"witness", l.witness}});
  return {{"label", label}, {"blocks", bs}, {"links", ls}};
}

OrbitPartition orbits(const FormsContext& ctx, const ROFPLattice& lat, const std::vector<UMatrix>& witnesses,
                      bool with_elementary, bool full_group) {
  const std::size_t L = lat.params.size();
  std::vector<std::size_t> parent(L);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  OrbitPartition out;
  std::map<std::pair<std::size_t, std::size_t>, std::string> seen;
  auto act = [&](const UMatrix& s, const std::string& name) {
    const auto row = image_row(ctx, lat, s);
    for (std::size_t a = 0; a < L; ++a) {
      if (row[a] < 0)
        throw Error(ErrorCode::certification_failed, "image of a relative parameter left the lattice under " + name);
      const std::size_t b = static_cast<std::size_t>(row[a]);
      if (a == b || seen.count({a, b})) continue;
      seen[{a, b}] = name;
      out.links.push_back({a, b, name});
      parent[find(a)] = find(b);
    }
  };
  for (std::size_t k = 0; k < witnesses.size(); ++k) act(witnesses[k], "witness:" + std::to_string(k));
  if (with_elementary) {
    const auto gens = ctx.elementary_generators();
    for (std::size_t k = 0; k < gens.size(); ++k) act(gens[k], "elementary:" + std::to_string(k));
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t a = 0; a < L; ++a) groups[find(a)].push_back(a);
  for (auto& [root, members] : groups) out.blocks.push_back(members);
  std::sort(out.blocks.begin(), out.blocks.end());
  out.label = full_group ? "orbit" : "reachable-closure";
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ScenarioAbort {};

}  // namespace

SubgroupHandle m2f2_row_subgroup(const FormsContext& ctx) {
  const FiniteRing& r = ctx.ring();
  if (r.spec().digest() != "M2(F2)")
    throw Error(ErrorCode::incompatible_ring, "example174_H needs the ring M2(F2)");
  auto M = [&](Elem a, Elem b, Elem c, Elem d) {
    const Elem digits[4] = {a, b, c, d};
    return r.compose(digits);
  };
  // Identity outside row 0; row 0 is (x, e or [[1,1],[0,1]], y).
  const Elem e1 = r.one(), ut = M(1, 1, 0, 1);
  const Theta th = ctx.theta();
  auto inH = [th, e1, ut](const UMatrix& m) {
    for (int i : th.all())
      for (int j : th.all()) {
        const Elem v = m.at(i, j);
        if (i == 0) {
          if (j == 0 && v != e1 && v != ut) return false;
          continue;
        }
        if (v != (i == j ? e1 : 0)) return false;
      }
    return true;
  };
  std::vector<UMatrix> gens;
  for (int j : th.hb())
    for (std::size_t unit = 0; unit < 4; ++unit) {
      Elem digits[4] = {0, 0, 0, 0};
      digits[unit] = 1;
      UMatrix g = ctx.identity();
      g.at(0, j) = r.compose(digits);
      gens.push_back(g);
    }
  UMatrix tau = ctx.identity();
  tau.at(0, 0) = ut;
  gens.push_back(tau);
  return SubgroupHandle::from_predicate(ctx, "example174_H", inH, gens);
}

ScenarioResult run_m2f2_scenario(int n) {
  ScenarioResult res;
  json asserts = json::array();
  auto expect = [&](const std::string& name, bool ok, json expected, json observed) {
    asserts.push_back({{"name", name}, {"pass", ok}, {"expected", expected}, {"observed", observed}});
    if (!ok) throw ScenarioAbort{};
  };
  json facts = json::object();
  try {
    auto ring = build_ring(RingSpec::matrix(2, RingSpec::prime_field(2)));
    const FiniteRing& r = *ring;
    auto q = make_odd_quadruple(ring, standard_involution(ring, StandardInvolution::transpose), r.one(), 0);
    const Heisenberg h(q);
    auto M = [&](Elem a, Elem b, Elem c, Elem d) {
      const Elem digits[4] = {a, b, c, d};
      return r.compose(digits);
    };

    // Delta_max = {(x, y) | y = y^t}.
    const PointSet dmax = delta_max(h);
    bool shape = true;
    for (Elem x = 0; x < r.size(); ++x)
      for (Elem y = 0; y < r.size(); ++y)
        if (dmax.contains({x, y}) != (q->bar(y) == y)) shape = false;
    expect("delta-max-is-symmetric-second-coordinate", shape, dmax.size(), dmax.size());

    const FormsContext ctx(n, q, dmax);
    ElemSet zero(r.size());
    zero.insert(0);
    PointSet origin(r.size());
    origin.insert({0, 0});
    expect("omega-min-trivial", omega_min(h, dmax, zero) == origin, 1, omega_min(h, dmax, zero).size());
    PointSet rx0(r.size());
    for (Elem x = 0; x < r.size(); ++x) rx0.insert({x, 0});
    expect("omega-max-is-R-times-0", omega_max(h, dmax, zero) == rx0, rx0.size(), omega_max(h, dmax, zero).size());

    // The five right ideals J_1..J_5.
    std::vector<ElemSet> J(5, ElemSet(r.size()));
    for (Elem a = 0; a < 2; ++a)
      for (Elem b = 0; b < 2; ++b) {
        J[1].insert(M(a, b, 0, 0));
        J[2].insert(M(0, 0, a, b));
        J[3].insert(M(a, b, a, b));
      }
    J[0].insert(0);
    for (Elem x = 0; x < r.size(); ++x) J[4].insert(x);
    std::vector<PointSet> Om;
    for (const ElemSet& j : J) {
      PointSet p(r.size());
      for (Elem x : j.elements()) p.insert({x, 0});
      Om.push_back(p);
    }
    const ROFPLattice lat = rofp_lattice(ctx, zero);
    expect("lattice-size", lat.params.size() == 5, 5, lat.params.size());
    std::vector<std::size_t> where(5);
    bool all_found = true;
    json mapping = json::array();
    for (std::size_t i = 0; i < 5; ++i) {
      const auto k = lat.index_of(Om[i]);
      if (!k) all_found = false;
      where[i] = k.value_or(0);
      mapping.push_back(k ? json(*k) : json(nullptr));
    }
    expect("lattice-equals-J1-J5", all_found, "J_i x {0} for i=1..5", mapping);
    facts["lattice"] = lat.to_json();
    facts["J4"] = {r.render(M(0, 0, 0, 0)), r.render(M(1, 0, 1, 0)), r.render(M(0, 1, 0, 1)), r.render(M(1, 1, 1, 1))};

    // sigma: the middle entry swaps the rows of R.
    UMatrix sigma = ctx.identity();
    sigma.at(0, 0) = M(0, 1, 1, 0);
    expect("sigma-unitary", ctx.is_unitary(sigma).unitary, true, ctx.is_unitary(sigma).violations);
    const PointSet moved = conj_form_parameter(ctx, sigma, Om[1], zero);
    expect("sigma-moves-omega2-to-omega3", moved == Om[2], Om[2].to_json(), moved.to_json());

    const Level L2(ctx, zero, Om[1]);
    const TildeMembership t = in_tilde(L2, sigma);
    expect("sigma-not-in-U-tilde", !t.member, false, t.to_json());
    expect("tilde-conditions-agree", t.agree(), true, t.to_json());
    const CheckReport conj_lvl = conjugate_level_check(ctx, sigma, L2);
    expect("conjugate-level-sigma-omega2", conj_lvl.passed(), "pass", conj_lvl.to_json());

    // Orbits: sigma and a lower unitriangular middle block as witnesses.
    UMatrix rho = ctx.identity();
    rho.at(0, 0) = M(1, 0, 1, 1);
    const OrbitPartition part = orbits(ctx, lat, {sigma, rho});
    std::vector<std::vector<std::size_t>> want = {{where[0]}, {where[1], where[2], where[3]}, {where[4]}};
    for (auto& b : want) std::sort(b.begin(), b.end());
    std::sort(want.begin(), want.end());
    expect("reachable-partition", part.blocks == want, want, part.blocks);
    // Every sigma acts as an inclusion preserving bijection, so it fixes the
    // least and the largest member; the three middle members are reachable
    // from one another, so the full orbits are exactly these blocks.
    bool extremes = true;
    for (const UMatrix& g : std::vector<UMatrix>{sigma, rho}) {
      const auto row = image_row(ctx, lat, g);
      if (row[where[0]] != static_cast<long>(where[0]) || row[where[4]] != static_cast<long>(where[4]))
        extremes = false;
    }
    expect("extremes-fixed", extremes, true, extremes);
    facts["orbits"] = part.to_json(lat);
    facts["orbit_argument"] =
        "Omega_min and Omega_max are fixed by every element (least and largest member under an inclusion "
        "preserving bijection); Omega_2, Omega_3, Omega_4 are mutually reachable; hence the orbit partition is "
        "{Omega_1}, {Omega_2, Omega_3, Omega_4}, {Omega_5}";
    std::vector<std::size_t> sizes;
    for (const auto& b : part.blocks) sizes.push_back(b.size());
    facts["partition_sizes"] = sizes;

    const SubgroupHandle H = m2f2_row_subgroup(ctx);
    const std::vector<UMatrix>& hgens = H.generators();
    const Elem ut = M(1, 1, 0, 1);
    UMatrix tau = ctx.identity();
    tau.at(0, 0) = ut;
    bool gens_ok = true;
    for (const UMatrix& g : hgens)
      if (!ctx.is_unitary(g).unitary || !H.contains(g)) gens_ok = false;
    expect("H-generators-unitary", gens_ok, true, gens_ok);

    const SandwichReport sw = sandwich_check(H);
    expect("H-level-is-0-omega-max", sw.level.certified() && sw.level.ideal == zero && sw.level.omega == rx0,
           Level(ctx, zero, rx0).to_json(), sw.level.to_json());
    expect("H-E-normal", sw.e_normal.normal, true, sw.e_normal.to_json());
    expect("sandwich-lower", sw.lower.verdict == Verdict::verified, "verified", sw.lower.to_json());
    expect("sandwich-upper", sw.upper.verdict == Verdict::verified, "verified", sw.upper.to_json());
    const Level Lmax(ctx, zero, rx0);
    bool inU = true;
    for (const UMatrix& g : hgens)
      if (!in_principal(Lmax, g).member) inU = false;
    expect("H-inside-U-level", inU, true, inU);
    facts["sandwich"] = sw.to_json();

    const UMatrix st = ctx.conjugate(sigma, tau);
    UMatrix want_st = ctx.identity();
    want_st.at(0, 0) = M(1, 0, 1, 1);
    expect("conjugate-tau-shape", st == want_st, matrix_to_json(ctx, want_st, true), matrix_to_json(ctx, st, true));
    expect("conjugate-tau-not-in-H", !H.contains(st), false, H.contains(st));

    // The conjugate subgroup has level (0, ^sigma Omega_max) = (0, Omega_max).
    const UMatrix si = ctx.inv(sigma);
    std::vector<UMatrix> cgens;
    for (const UMatrix& g : hgens) cgens.push_back(ctx.conjugate(sigma, g));
    const SubgroupHandle sH = SubgroupHandle::from_predicate(
        ctx, "sigma_H", [&ctx, &si, &sigma, &H](const UMatrix& m) {
          return H.contains(ctx.multiply(ctx.multiply(si, m), sigma));
        },
        cgens);
    const LevelResult sl = level_of(sH);
    const PointSet smax = conj_form_parameter(ctx, sigma, rx0, zero);
    expect("conjugate-H-level", sl.certified() && sl.ideal == zero && sl.omega == smax && smax == rx0,
           Level(ctx, zero, smax).to_json(), sl.to_json());
    facts["U_tilde_differs_from_U"] = true;
    facts["n"] = n;
  } catch (const ScenarioAbort&) {
  }
  res.passed = !asserts.empty() && std::all_of(asserts.begin(), asserts.end(), [](const json& a) { return a["pass"].get<bool>(); });
  res.report = {{"scenario", "M2(F2) transpose, lambda=1, mu=0, Delta=Delta_max, I=0"},
                {"assertions", asserts},
                {"facts", facts},
                {"passed", res.passed}};
  return res;
}

}  // namespace oddform
