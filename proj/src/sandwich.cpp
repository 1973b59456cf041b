#include "oddform/sandwich.hpp"

#include "oddform/error.hpp"

namespace oddform {

namespace {

json point_json(HPoint p) { return json::array({p.x, p.y}); }

}  // namespace

json LevelResult::to_json() const {
  json j = {{"ideal", ideal.to_json()}, {"omega", omega.to_json()}, {"certified", certified()},
            {"witnesses", witnesses}};
  if (!failure.empty()) j["failure"] = failure;
  return j;
}

LevelResult level_of(const SubgroupHandle& H) {
  const FormsContext& ctx = H.context();
  const FiniteRing& r = ctx.ring();
  const Theta th = ctx.theta();
  if (!H.decidable())
    throw Error(ErrorCode::closure_overflow, "membership in '" + H.name() + "' is undecided; raise the cap");
  LevelResult res;
  res.ideal = ElemSet(r.size());
  res.omega = PointSet(r.size());
  json iw = json::object(), ow = json::object();
  for (Elem x = 0; x < r.size(); ++x) {
    if (x == 0) {
      res.ideal.insert(0);
      continue;
    }
    bool found = false;
    for (int i : th.hb()) {
      for (int j : th.hb()) {
        if (i == j || i == -j) continue;
        if (H.contains(ctx.T_short(i, j, x))) {
          res.ideal.insert(x);
          iw[std::to_string(x)] = json::array({i, j});
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  for (const HPoint& a : ctx.delta().points()) {
    if (a == HPoint{0, 0}) {
      res.omega.insert(a);
      continue;
    }
    for (int i = -1; i >= -th.n; --i)
      if (H.contains(ctx.T_extra(i, a))) {
        res.omega.insert(a);
        ow[point_json(a).dump()] = i;
        break;
      }
  }
  res.witnesses = {{"ideal", iw}, {"omega", ow}};
  try {
    res.level.emplace(ctx, res.ideal, res.omega);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::certification_failed) throw;
    res.failure = e.what();
  }
  return res;
}

json NormalityResult::to_json() const { return {{"normal", normal}, {"checked", checked}, {"witness", witness}}; }

NormalityResult is_E_normal(const SubgroupHandle& H, const std::vector<UMatrix>& eu_gens) {
  const FormsContext& ctx = H.context();
  NormalityResult res;
  for (const UMatrix& g : eu_gens) {
    const UMatrix gi = ctx.inv(g);
    for (std::size_t k = 0; k < H.generators().size(); ++k) {
      const UMatrix& h = H.generators()[k];
      ++res.checked;
      if (!H.contains(ctx.multiply(ctx.multiply(g, h), gi))) {
        res.witness = {{"conjugator", matrix_to_json(ctx, g)}, {"generator", k}};
        return res;
      }
    }
  }
  res.normal = true;
  return res;
}

json Containment::to_json() const {
  return {{"verdict", to_string(verdict)}, {"checked", checked}, {"witness", witness}, {"method", method}};
}

json SandwichReport::to_json() const {
  return {{"level", level.to_json()},
          {"e_normal", e_normal.to_json()},
          {"lower", lower.to_json()},
          {"upper", upper.to_json()}};
}

SandwichReport sandwich_check(const SubgroupHandle& H, std::size_t conj_cap) {
  const FormsContext& ctx = H.context();
  SandwichReport rep;
  rep.level = level_of(H);
  const std::vector<UMatrix> eu = ctx.elementary_generators();
  rep.e_normal = is_E_normal(H, eu);
  if (!rep.level.certified()) {
    rep.lower.method = rep.upper.method = "level not certified";
    return rep;
  }
  const Level& L = *rep.level.level;

  // Lower: preelementary generators lie in H; with H E-normal, so does
  // their normal closure in EU.
  const std::vector<UMatrix> pre = eu_level_generators(L);
  rep.lower.verdict = Verdict::verified;
  for (const UMatrix& g : pre) {
    ++rep.lower.checked;
    if (!H.contains(g)) {
      rep.lower.verdict = Verdict::refuted;
      rep.lower.witness = {{"preelementary", matrix_to_json(ctx, g)}};
      break;
    }
  }
  if (rep.lower.verdict == Verdict::verified) {
    if (rep.e_normal.normal) {
      rep.lower.method = "preelementary generators in H, H normalized by EU";
    } else {
      rep.lower.method = "conjugates of preelementary generators by elementary generators";
      rep.lower.verdict = Verdict::truncated;
      for (const UMatrix& c : eu) {
        const UMatrix ci = ctx.inv(c);
        for (const UMatrix& g : pre) {
          if (rep.lower.checked >= conj_cap) break;
          ++rep.lower.checked;
          const UMatrix m = ctx.multiply(ctx.multiply(c, g), ci);
          if (!H.contains(m)) {
            rep.lower.verdict = Verdict::refuted;
            rep.lower.witness = {{"conjugate", matrix_to_json(ctx, m)}};
            break;
          }
        }
        if (rep.lower.verdict == Verdict::refuted || rep.lower.checked >= conj_cap) break;
      }
    }
  }

  // Upper: CU is a subgroup, so generators of H suffice.
  rep.upper.method = "generators of H in CU via commutators with elementary generators";
  rep.upper.verdict = Verdict::verified;
  for (std::size_t k = 0; k < H.generators().size(); ++k) {
    ++rep.upper.checked;
    const CUMembership c = in_CU(L, H.generators()[k], eu);
    if (!c.member) {
      rep.upper.verdict = Verdict::refuted;
      rep.upper.witness = {{"generator", k}, {"cu", c.to_json()}};
      break;
    }
  }
  return rep;
}

}  // namespace oddform
