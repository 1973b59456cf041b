#include "oddform/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "oddform/action.hpp"
#include "oddform/congruence.hpp"
#include "oddform/error.hpp"
#include "oddform/sandwich.hpp"

namespace oddform {

namespace {

constexpr std::size_t kScanCap = std::size_t{1} << 22;
// Groups up to this order are used whole by the membership, congruence and
// action suites.
constexpr std::size_t kWholeGroup = 500;

double matrix_count(const FormsContext& ctx) {
  return std::pow(static_cast<double>(ctx.ring().size()), static_cast<double>(ctx.dim() * ctx.dim()));
}

double module_size(const FormsContext& ctx) {
  return std::pow(static_cast<double>(ctx.ring().size()), static_cast<double>(ctx.dim()));
}

UMatrix random_product(const FormsContext& ctx, const std::vector<UMatrix>& gens, std::mt19937_64& rng,
                       std::size_t length) {
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  UMatrix s = ctx.identity();
  for (std::size_t t = 0; t < length; ++t) s = ctx.multiply(s, gens[pick(rng)]);
  return s;
}

struct LevelList {
  std::vector<Level> levels;
  bool truncated = false;
};

LevelList all_levels(const FormsContext& ctx, const SuiteOptions& opt, std::size_t limit) {
  LevelList out;
  for (const ElemSet& I : invariant_ideals(ctx.quadruple())) {
    std::vector<PointSet> ps;
    try {
      ps = enumerate_relative_form_parameters(ctx.heis(), ctx.delta(), I, opt.cap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::enumeration_overflow) throw;
      out.truncated = true;
      continue;
    }
    for (PointSet& p : ps) {
      if (out.levels.size() >= limit) {
        out.truncated = true;
        return out;
      }
      out.levels.emplace_back(ctx, I, std::move(p));
    }
  }
  return out;
}

std::string level_tag(const Level& L) {
  return "[|I|=" + std::to_string(L.ideal().size()) + ",|Omega|=" + std::to_string(L.omega().size()) + "]";
}

void tag(std::vector<CheckReport>& reps, const std::string& suffix) {
  for (CheckReport& r : reps) r.id += suffix;
}

}  // namespace

GroupSample group_sample(const FormsContext& ctx, const SuiteOptions& opt) {
  GroupSample g;
  if (matrix_count(ctx) <= static_cast<double>(kScanCap)) {
    g.elements = enumerate_unitary_group(ctx, kScanCap);
    g.complete = true;
    g.method = "matrix scan";
    return g;
  }
  const std::vector<UMatrix> gens = ctx.elementary_generators();
  try {
    g.elements = generate_group(ctx, gens, std::min<std::size_t>(opt.cap, 20000));
    g.method = "elementary closure";
    return g;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::closure_overflow) throw;
  }
  std::mt19937_64 rng(opt.seed);
  g.elements.push_back(ctx.identity());
  for (std::size_t k = 1; k < opt.group_samples; ++k) g.elements.push_back(random_product(ctx, gens, rng, 3 + k % 12));
  g.method = "random elementary products";
  return g;
}

std::vector<ElemSet> invariant_ideals(const OddQuadruple& q) {
  const FiniteRing& r = q.ring();
  std::vector<ElemSet> principal;
  for (Elem x = 0; x < r.size(); ++x) {
    ElemSet p = involution_invariant_ideal(q, {x});
    if (std::find(principal.begin(), principal.end(), p) == principal.end()) principal.push_back(p);
  }
  // Every ideal of a finite ring is a finite join of principal ones.
  std::vector<ElemSet> all = principal;
  for (std::size_t k = 0; k < all.size(); ++k)
    for (const ElemSet& p : principal) {
      std::vector<Elem> gens = all[k].elements();
      gens.insert(gens.end(), p.elements().begin(), p.elements().end());
      ElemSet j = involution_invariant_ideal(q, gens);
      if (std::find(all.begin(), all.end(), j) == all.end()) all.push_back(j);
    }
  std::sort(all.begin(), all.end(), [](const ElemSet& a, const ElemSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.elements() < b.elements();
  });
  return all;
}

std::vector<CheckReport> suite_quasimodule(const FormsContext& ctx, const SuiteOptions& opt) {
  std::vector<CheckReport> out = verify_heisenberg_identities(ctx.heis(), ctx.heis(-1), ctx.delta(), opt.seed);
  std::vector<CheckReport> forms = verify_forms(ctx, opt.seed);
  out.insert(out.end(), forms.begin(), forms.end());

  // Every enumerated form parameter certifies and lies between the extremes.
  CheckReport fp("form-parameter-enumeration");
  const Heisenberg& h = ctx.heis();
  try {
    const auto all = enumerate_form_parameters(h, opt.cap);
    const PointSet lo = delta_min(h), hi = delta_max(h);
    bool has_lo = false, has_hi = false;
    for (const FormParameter& p : all) {
      fp.record(lo.subset_of(p.elements()) && p.elements().subset_of(hi) && is_subquasimodule(h, p.elements()),
                [&] { return p.elements().to_json(); });
      has_lo = has_lo || p.elements() == lo;
      has_hi = has_hi || p.elements() == hi;
    }
    fp.record(has_lo && has_hi, [] { return json("missing an endpoint"); });
    fp.notes = {{"count", all.size()}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::enumeration_overflow) throw;
    fp.truncated = true;
    fp.exhaustive = false;
    fp.notes = {{"overflow", e.what()}};
  }
  out.push_back(fp);
  return out;
}

std::vector<CheckReport> suite_relations(const FormsContext& ctx, const SuiteOptions& opt) {
  std::vector<CheckReport> out = verify_relations(ctx, opt.seed, 4, opt.relation_samples);
  std::vector<CheckReport> p = verify_permutation_conjugations(ctx, opt.seed, 4, opt.relation_samples);
  out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<CheckReport> suite_membership(const FormsContext& ctx, const SuiteOptions& opt) {
  std::vector<CheckReport> out;
  CheckReport oracle("unitary-oracle"), gram("gram-preservation");
  const bool full_delta = ctx.delta().size() == ctx.ring().size() * ctx.ring().size();
  std::vector<UMatrix> tested;
  if (matrix_count(ctx) <= static_cast<double>(kScanCap) && module_size(ctx) <= 4096) {
    tested = enumerate_invertible(ctx, kScanCap);
  } else {
    oracle.exhaustive = gram.exhaustive = false;
    tested = group_sample(ctx, opt).elements;
    // Random invertible non-unitary matrices as negatives.
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_int_distribution<Elem> el(0, static_cast<Elem>(ctx.ring().size() - 1));
    for (std::size_t k = 0; k < opt.group_samples; ++k) {
      UMatrix m(ctx.n());
      for (Elem& v : m.e) v = el(rng);
      if (ctx.inverse(m)) tested.push_back(m);
    }
  }
  const bool brute = module_size(ctx) <= 4096;
  std::size_t members = 0;
  for (const UMatrix& m : tested) {
    const bool fast = ctx.is_unitary(m).unitary;
    if (fast) ++members;
    if (brute) oracle.record(fast == ctx.is_unitary_bruteforce(m), [&] { return matrix_to_json(ctx, m); });
    if (full_delta) gram.record(fast == ctx.preserves_form(m), [&] { return matrix_to_json(ctx, m); });
  }
  oracle.notes = {{"matrices", tested.size()}, {"unitary", members}};
  if (!brute) oracle.notes["skipped"] = "module too large for the oracle";
  out.push_back(oracle);
  if (full_delta) out.push_back(gram);

  const GroupSample g = group_sample(ctx, opt);
  std::vector<UMatrix> elems = g.elements;
  if (elems.size() > kWholeGroup) elems.resize(kWholeGroup);
  const LevelList ls = all_levels(ctx, opt, 64);
  for (const Level& L : ls.levels) {
    std::vector<CheckReport> chain = verify_membership_chain(L, elems, brute);
    for (CheckReport& r : chain) r.exhaustive = r.exhaustive && g.complete && elems.size() == g.elements.size();
    tag(chain, level_tag(L));
    out.insert(out.end(), chain.begin(), chain.end());
  }
  if (ls.truncated) {
    CheckReport t("levels");
    t.truncated = true;
    t.exhaustive = false;
    out.push_back(t);
  }
  return out;
}

CheckReport verify_commutator_columns_sampled(const FormsContext& ctx, std::size_t pairs, std::uint64_t seed) {
  const std::vector<UMatrix> gens = ctx.elementary_generators();
  std::mt19937_64 rng(seed);
  const int n = ctx.n();
  std::uniform_int_distribution<int> idx(0, 2 * n - 1);
  auto label = [&] {
    const int v = idx(rng);
    return v < n ? v + 1 : -(v - n + 1);
  };
  CheckReport columns("commutator-columns");
  columns.exhaustive = false;
  std::size_t extra = 0;
  for (std::size_t t = 0; t < pairs; ++t) {
    const UMatrix s = random_product(ctx, gens, rng, 4 + t % 12);
    RootMove mv;
    mv.extra = rng() % 2;
    mv.i = label();
    if (mv.extra) {
      const std::vector<HPoint> pts = ctx.delta(-Theta::eps(mv.i)).points();
      mv.a = pts[rng() % pts.size()];
      ++extra;
    } else {
      do mv.j = label();
      while (mv.j == mv.i || mv.j == -mv.i);
      mv.x = static_cast<Elem>(rng() % ctx.ring().size());
    }
    const CheckReport r = verify_commutator_columns(ctx, s, mv);
    columns.checked += r.checked;
    columns.failed += r.failed;
    for (const json& w : r.witnesses)
      if (columns.witnesses.size() < CheckReport::kMaxWitnesses) columns.witnesses.push_back(w);
  }
  columns.notes = {{"pairs", pairs}, {"extra_short_moves", extra}};
  return columns;
}

std::vector<CheckReport> suite_congruence(const FormsContext& ctx, const SuiteOptions& opt) {
  std::vector<CheckReport> out;
  const GroupSample g = group_sample(ctx, opt);
  std::vector<UMatrix> elems = g.elements;
  const bool cut = elems.size() > kWholeGroup;
  if (cut) elems.resize(kWholeGroup);
  const LevelList ls = all_levels(ctx, opt, 32);
  for (const Level& L : ls.levels) {
    std::vector<CheckReport> reps = verify_q_sum_defect(L, opt.seed);
    reps.push_back(verify_q_shift(L, elems, opt.seed));
    reps.push_back(verify_tilde_normalizes(L, elems));
    for (CheckReport& r : reps)
      if (r.id.rfind("q-sum-", 0) != 0) r.exhaustive = r.exhaustive && g.complete && !cut;
    tag(reps, level_tag(L));
    out.insert(out.end(), reps.begin(), reps.end());
  }
  for (const ElemSet& I : invariant_ideals(ctx.quadruple())) {
    CheckReport r = verify_omega_max_level(ctx, I, elems);
    r.exhaustive = g.complete && !cut;
    r.id += "[|I|=" + std::to_string(I.size()) + "]";
    out.push_back(r);
  }

  const int n = ctx.n();
  if (n >= 2) out.push_back(verify_commutator_columns_sampled(ctx, opt.column_pairs, opt.seed));
  if (n >= 2) {
    std::vector<CheckReport> red = verify_reductions(ctx, opt.reductions, 12, opt.seed);
    if (n < 3) red.erase(std::remove_if(red.begin(), red.end(), [](const CheckReport& r) { return r.checked == 0; }),
                         red.end());
    out.insert(out.end(), red.begin(), red.end());
  }
  if (ls.truncated) {
    CheckReport t("levels");
    t.truncated = true;
    t.exhaustive = false;
    out.push_back(t);
  }
  return out;
}

std::vector<CheckReport> suite_action(const FormsContext& ctx, const SuiteOptions& opt) {
  std::vector<CheckReport> out;
  const GroupSample g = group_sample(ctx, opt);
  CheckReport order("group-order");
  order.record(!g.elements.empty());
  order.exhaustive = g.complete;
  order.notes = {{"size", g.elements.size()}, {"method", g.method}, {"complete", g.complete}};
  out.push_back(order);

  std::vector<UMatrix> elems = g.elements;
  const bool cut = elems.size() > kWholeGroup;
  if (cut) elems.resize(kWholeGroup);
  const bool whole = g.complete && !cut;
  for (const ElemSet& I : invariant_ideals(ctx.quadruple())) {
    ROFPLattice lat;
    try {
      lat = rofp_lattice(ctx, I, opt.cap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::enumeration_overflow) throw;
      CheckReport t("rofp[|I|=" + std::to_string(I.size()) + "]");
      t.truncated = true;
      t.exhaustive = false;
      out.push_back(t);
      continue;
    }
    const std::string suffix = "[|I|=" + std::to_string(I.size()) + "]";
    std::vector<CheckReport> laws =
        verify_action_laws(ctx, lat, elems, opt.seed, std::max<std::size_t>(4000, elems.size() * elems.size()));
    for (CheckReport& r : laws) r.exhaustive = r.exhaustive && whole;
    tag(laws, suffix);
    out.insert(out.end(), laws.begin(), laws.end());

    CheckReport conj_lvl("conjugate-level" + suffix);
    conj_lvl.exhaustive = whole;
    for (const PointSet& om : lat.params) {
      const Level L(ctx, I, om);
      for (const UMatrix& s : elems) {
        const CheckReport r = conjugate_level_check(ctx, s, L, whole ? &g.elements : nullptr);
        conj_lvl.checked += r.checked;
        conj_lvl.failed += r.failed;
        for (const json& w : r.witnesses)
          if (conj_lvl.witnesses.size() < CheckReport::kMaxWitnesses) conj_lvl.witnesses.push_back(w);
      }
    }
    conj_lvl.notes = {{"mode", whole ? "subgroup equality" : "preelementary generators"}, {"levels", lat.params.size()}};
    out.push_back(conj_lvl);
  }
  return out;
}

std::vector<CheckReport> run_suite(const FormsContext& ctx, const std::string& suite, const SuiteOptions& opt) {
  if (suite == "quasimodule") return suite_quasimodule(ctx, opt);
  if (suite == "relations") return suite_relations(ctx, opt);
  if (suite == "membership") return suite_membership(ctx, opt);
  if (suite == "congruence") return suite_congruence(ctx, opt);
  if (suite == "action") return suite_action(ctx, opt);
  if (suite == "all") {
    std::vector<CheckReport> out;
    for (const char* s : {"quasimodule", "relations", "membership", "congruence", "action"}) {
      std::vector<CheckReport> r = run_suite(ctx, s, opt);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  throw Error(ErrorCode::config_invalid, "unknown suite '" + suite + "'");
}

}  // namespace oddform
