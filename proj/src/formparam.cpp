#include "oddform/formparam.hpp"

#include "sampling.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace oddform {

Heisenberg::Heisenberg(std::shared_ptr<const OddQuadruple> q)
    : q_(std::move(q)),
      r_(&q_->ring()),
      bar_(q_->involution().table().data()),
      lambda_(q_->lambda()),
      mu_(q_->mu()) {}

HPoint Heisenberg::times(long long n, HPoint a) const {
  HPoint base = n < 0 ? neg(a) : a;
  unsigned long long k = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  HPoint acc{0, 0};
  while (k--) acc = plus(acc, base);
  return acc;
}

// ---------------------------------------------------------------------------

const std::vector<std::uint32_t>& IndexSet::members() const {
  if (!sorted_) {
    std::sort(members_.begin(), members_.end());
    sorted_ = true;
  }
  return members_;
}

bool IndexSet::subset_of(const IndexSet& other) const {
  if (universe_ != other.universe_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

ElemSet ElemSet::all(std::size_t ring_size) {
  ElemSet s(ring_size);
  for (Elem x = 0; x < ring_size; ++x) s.insert(x);
  return s;
}

json ElemSet::to_json() const { return elements(); }

std::vector<HPoint> PointSet::points() const {
  std::vector<HPoint> out;
  out.reserve(set_.size());
  for (std::uint32_t c : set_.members())
    out.push_back({static_cast<Elem>(c / n_), static_cast<Elem>(c % n_)});
  return out;
}

json PointSet::to_json() const {
  json out = json::array();
  for (const HPoint& p : points()) out.push_back({p.x, p.y});
  return out;
}

ElemSet PointSet::first_coordinates() const {
  ElemSet out(n_);
  for (const HPoint& p : points()) out.insert(p.x);
  return out;
}

ElemSet PointSet::zero_fiber() const {
  ElemSet out(n_);
  for (Elem y = 0; y < n_; ++y)
    if (contains({0, y})) out.insert(y);
  return out;
}

PointSet point_set_from_json(const FiniteRing& ring, const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::config_invalid, "point set must be an array of pairs");
  PointSet out(ring.size());
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::config_invalid, "point must be a pair: " + p.dump());
    out.insert({parse_element_ref(ring, p[0]), parse_element_ref(ring, p[1])});
  }
  return out;
}

ElemSet elem_set_from_json(const FiniteRing& ring, const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::config_invalid, "element set must be an array");
  ElemSet out(ring.size());
  for (const auto& e : j) out.insert(parse_element_ref(ring, e));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Grows `group` (a subgroup with generating set `basis`) to the subgroup
// generated by it and `extra`. Every element is kept in `list`.
void extend_subgroup(const Heisenberg& h, PointSet& group, std::vector<HPoint>& list, std::vector<HPoint>& basis,
                     const std::vector<HPoint>& extra) {
  for (const HPoint& g : extra) {
    if (group.contains(g)) continue;
    basis.push_back(g);
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (const HPoint& b : basis) {
        const HPoint c = h.plus(list[i], b);
        if (group.insert(c)) list.push_back(c);
      }
    }
  }
}

std::vector<HPoint> scaled_family(const Heisenberg& h, const std::vector<HPoint>& gens) {
  std::vector<HPoint> out;
  const std::size_t n = h.ring().size();
  PointSet seen(n);
  for (const HPoint& g : gens)
    for (Elem r = 0; r < n; ++r) {
      const HPoint p = h.scale(g, r);
      if (seen.insert(p)) out.push_back(p);
    }
  return out;
}

}  // namespace

PointSet close_subgroup(const Heisenberg& h, const std::vector<HPoint>& gens) {
  PointSet group(h.ring().size());
  group.insert({0, 0});
  std::vector<HPoint> list{{0, 0}};
  std::vector<HPoint> basis;
  extend_subgroup(h, group, list, basis, gens);
  return group;
}

PointSet close_subquasimodule(const Heisenberg& h, const std::vector<HPoint>& gens) {
  return close_subgroup(h, scaled_family(h, gens));
}

std::vector<HPoint> subgroup_generators(const Heisenberg& h, const PointSet& s) {
  PointSet group(h.ring().size());
  group.insert({0, 0});
  std::vector<HPoint> list{{0, 0}};
  std::vector<HPoint> basis;
  extend_subgroup(h, group, list, basis, s.points());
  return basis;
}

bool is_subgroup(const Heisenberg& h, const PointSet& s) {
  if (!s.contains({0, 0})) return false;
  const auto pts = s.points();
  if (pts.size() <= 2048) {
    for (const HPoint& a : pts)
      for (const HPoint& b : pts)
        if (!s.contains(h.minus(a, b))) return false;
    return true;
  }
  // A finite set closed under right addition of its generators is the
  // subgroup they generate.
  for (const HPoint& g : subgroup_generators(h, s))
    for (const HPoint& a : pts)
      if (!s.contains(h.plus(a, g))) return false;
  return close_subgroup(h, pts) == s;
}

bool is_subquasimodule(const Heisenberg& h, const PointSet& s) {
  if (!is_subgroup(h, s)) return false;
  const std::size_t n = h.ring().size();
  for (const HPoint& a : s.points())
    for (Elem r = 0; r < n; ++r)
      if (!s.contains(h.scale(a, r))) return false;
  return true;
}

bool is_normal_in(const Heisenberg& h, const PointSet& sub, const PointSet& ambient) {
  const auto pts = sub.points();
  for (const HPoint& g : subgroup_generators(h, ambient)) {
    const HPoint gi = h.neg(g);
    for (const HPoint& a : pts) {
      if (!sub.contains(h.conjugate(g, a)) || !sub.contains(h.conjugate(gi, a))) return false;
    }
  }
  return true;
}

std::vector<PointSet> enumerate_between(const Heisenberg& h, const PointSet& lower, const PointSet& upper,
                                        std::size_t cap) {
  struct Node {
    PointSet set;
    std::vector<HPoint> list;
    std::vector<HPoint> basis;
  };
  std::vector<Node> found;
  std::map<std::vector<std::uint64_t>, std::size_t> seen;
  {
    Node root{PointSet(h.ring().size()), {{0, 0}}, {}};
    root.set.insert({0, 0});
    extend_subgroup(h, root.set, root.list, root.basis, lower.points());
    seen.emplace(root.set.raw().bits(), 0);
    found.push_back(std::move(root));
  }
  const auto upper_points = upper.points();
  for (std::size_t idx = 0; idx < found.size(); ++idx) {
    PointSet handled = found[idx].set;
    for (const HPoint& a : upper_points) {
      if (handled.contains(a)) continue;
      // closure(P u {a}) depends only on the coset a (+) P.
      for (const HPoint& p : found[idx].list) handled.insert(h.plus(a, p));
      Node child{found[idx].set, found[idx].list, found[idx].basis};
      extend_subgroup(h, child.set, child.list, child.basis, scaled_family(h, {a}));
      if (seen.count(child.set.raw().bits())) continue;
      if (found.size() >= cap)
        throw Error(ErrorCode::enumeration_overflow, "more than " + std::to_string(cap) + " parameters");
      seen.emplace(child.set.raw().bits(), found.size());
      found.push_back(std::move(child));
    }
  }
  std::vector<PointSet> out;
  out.reserve(found.size());
  for (auto& n : found) out.push_back(std::move(n.set));
  std::sort(out.begin(), out.end(), [](const PointSet& a, const PointSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.raw().members() < b.raw().members();
  });
  return out;
}

// ---------------------------------------------------------------------------

PointSet delta_min(const Heisenberg& h) {
  const FiniteRing& r = h.ring();
  const OddQuadruple& q = h.quadruple();
  PointSet out(r.size());
  for (Elem x = 0; x < r.size(); ++x) out.insert({0, r.sub(x, r.mul(q.bar(x), q.lambda()))});
  return out;
}

PointSet delta_max(const Heisenberg& h) {
  const FiniteRing& r = h.ring();
  PointSet out(r.size());
  for (Elem x = 0; x < r.size(); ++x)
    for (Elem y = 0; y < r.size(); ++y)
      if (h.trace({x, y}) == r.zero()) out.insert({x, y});
  return out;
}

FormParameter FormParameter::certify(const Heisenberg& h, PointSet s) {
  if (!delta_min(h).subset_of(s))
    throw Error(ErrorCode::certification_failed, "form parameter does not contain delta_min");
  if (!s.subset_of(delta_max(h)))
    throw Error(ErrorCode::certification_failed, "form parameter is not contained in ker(tr)");
  if (!is_subquasimodule(h, s))
    throw Error(ErrorCode::certification_failed, "form parameter is not an R-subquasimodule");
  PointSet all(h.ring().size());
  for (Elem x = 0; x < h.ring().size(); ++x)
    for (Elem y = 0; y < h.ring().size(); ++y) all.insert({x, y});
  if (!is_normal_in(h, s, all))
    throw Error(ErrorCode::certification_failed, "form parameter is not normal in R^2");
  return FormParameter(std::move(s));
}

std::vector<FormParameter> enumerate_form_parameters(const Heisenberg& h, std::size_t cap) {
  std::vector<FormParameter> out;
  for (auto& s : enumerate_between(h, delta_min(h), delta_max(h), cap))
    out.push_back(FormParameter::certify(h, std::move(s)));
  return out;
}

PointSet inverse_parameter(const OddQuadruple& q, const PointSet& delta) {
  const FiniteRing& r = q.ring();
  const Elem lb = q.bar(q.lambda());
  PointSet out(r.size());
  // bar(y) = z  <=>  y = bar(lambda) bar(z) lambda.
  for (const HPoint& p : delta.points()) out.insert({p.x, r.mul(r.mul(lb, q.bar(p.y)), q.lambda())});
  return out;
}

// ---------------------------------------------------------------------------

ElemSet additive_closure(const FiniteRing& r, const std::vector<Elem>& gens) {
  ElemSet s(r.size());
  s.insert(r.zero());
  std::vector<Elem> list{r.zero()};
  std::vector<Elem> basis;
  for (Elem g : gens) {
    if (s.contains(g)) continue;
    basis.push_back(g);
    for (std::size_t i = 0; i < list.size(); ++i)
      for (Elem b : basis) {
        const Elem c = r.add(list[i], b);
        if (s.insert(c)) list.push_back(c);
      }
  }
  return s;
}

ElemSet ideal_generated(const FiniteRing& r, const std::vector<Elem>& gens) {
  ElemSet ideal = additive_closure(r, {});
  for (Elem y : gens) {
    if (ideal.contains(y)) continue;
    std::vector<Elem> family = ideal.elements();
    for (Elem a = 0; a < r.size(); ++a)
      for (Elem b = 0; b < r.size(); ++b) family.push_back(r.mul(r.mul(a, y), b));
    ideal = additive_closure(r, family);
  }
  return ideal;
}

ElemSet involution_invariant_ideal(const OddQuadruple& q, const std::vector<Elem>& gens) {
  std::vector<Elem> all = gens;
  for (Elem y : gens) all.push_back(q.bar(y));
  return ideal_generated(q.ring(), all);
}

bool is_additive_subgroup(const FiniteRing& r, const ElemSet& s) {
  if (!s.contains(r.zero())) return false;
  for (Elem a : s.elements())
    for (Elem b : s.elements())
      if (!s.contains(r.sub(a, b))) return false;
  return true;
}

bool is_right_ideal(const FiniteRing& r, const ElemSet& s) {
  if (!is_additive_subgroup(r, s)) return false;
  for (Elem a : s.elements())
    for (Elem x = 0; x < r.size(); ++x)
      if (!s.contains(r.mul(a, x))) return false;
  return true;
}

bool is_left_ideal(const FiniteRing& r, const ElemSet& s) {
  if (!is_additive_subgroup(r, s)) return false;
  for (Elem a : s.elements())
    for (Elem x = 0; x < r.size(); ++x)
      if (!s.contains(r.mul(x, a))) return false;
  return true;
}

bool is_two_sided_ideal(const FiniteRing& r, const ElemSet& s) { return is_right_ideal(r, s) && is_left_ideal(r, s); }

ElemSet i_tilde(const OddQuadruple& q, const PointSet& delta, const ElemSet& ideal) {
  const FiniteRing& r = q.ring();
  const ElemSet jd = delta.first_coordinates();
  std::vector<Elem> left;  // bar(j) mu for j in J(delta)
  for (Elem j : jd.elements()) left.push_back(r.mul(q.bar(j), q.mu()));
  ElemSet out(r.size());
  for (Elem x = 0; x < r.size(); ++x) {
    bool in = true;
    for (Elem l : left)
      if (!ideal.contains(r.mul(l, x))) {
        in = false;
        break;
      }
    if (in) out.insert(x);
  }
  return out;
}

PointSet omega_min(const Heisenberg& h, const PointSet& delta, const ElemSet& ideal) {
  const FiniteRing& r = h.ring();
  const OddQuadruple& q = h.quadruple();
  std::vector<HPoint> gens;
  PointSet seen(r.size());
  auto add = [&](HPoint p) {
    if (seen.insert(p)) gens.push_back(p);
  };
  for (Elem x : ideal.elements()) add({0, r.sub(x, r.mul(q.bar(x), q.lambda()))});
  for (const HPoint& a : delta.points())
    for (Elem i : ideal.elements()) add(h.scale(a, i));
  return close_subgroup(h, gens);
}

PointSet omega_max(const Heisenberg& h, const PointSet& delta, const ElemSet& ideal) {
  const ElemSet it = i_tilde(h.quadruple(), delta, ideal);
  PointSet out(h.ring().size());
  for (const HPoint& p : delta.points())
    if (it.contains(p.x) && ideal.contains(p.y)) out.insert(p);
  return out;
}

std::vector<PointSet> enumerate_relative_form_parameters(const Heisenberg& h, const PointSet& delta,
                                                         const ElemSet& ideal, std::size_t cap) {
  return enumerate_between(h, omega_min(h, delta, ideal), omega_max(h, delta, ideal), cap);
}

DerivedSets derived_sets(const OddQuadruple& q, const PointSet& delta, const ElemSet& ideal, const PointSet& omega) {
  const FiniteRing& r = q.ring();
  DerivedSets d;
  d.j_delta = delta.first_coordinates();
  d.i_tilde = i_tilde(q, delta, ideal);
  d.i0 = ElemSet(r.size());
  for (Elem x = 0; x < r.size(); ++x) {
    bool in = true;
    for (Elem j : d.j_delta.elements())
      if (!ideal.contains(r.mul(x, j))) {
        in = false;
        break;
      }
    if (in) d.i0.insert(x);
  }
  d.i_tilde0 = ElemSet(r.size());
  for (Elem x = 0; x < r.size(); ++x) {
    bool in = true;
    for (Elem j : d.j_delta.elements())
      if (!d.i0.contains(r.mul(r.mul(q.bar(j), q.mu()), x))) {
        in = false;
        break;
      }
    if (in) d.i_tilde0.insert(x);
  }
  d.j_omega = omega.first_coordinates();
  d.lambda_delta = delta.zero_fiber();
  d.gamma_omega = omega.zero_fiber();
  return d;
}

json DerivedSets::to_json() const {
  return {{"J_delta", j_delta.to_json()}, {"I_tilde", i_tilde.to_json()},   {"I0", i0.to_json()},
          {"I_tilde0", i_tilde0.to_json()}, {"J_omega", j_omega.to_json()}, {"Lambda_delta", lambda_delta.to_json()},
          {"Gamma_omega", gamma_omega.to_json()}};
}

OddFormIdeal OddFormIdeal::certify(const Heisenberg& h, const PointSet& delta, ElemSet ideal, PointSet omega) {
  const FiniteRing& r = h.ring();
  const OddQuadruple& q = h.quadruple();
  if (!is_two_sided_ideal(r, ideal)) throw Error(ErrorCode::certification_failed, "I is not a two-sided ideal");
  for (Elem x : ideal.elements())
    if (!ideal.contains(q.bar(x))) throw Error(ErrorCode::certification_failed, "I is not involution invariant");
  if (!omega_min(h, delta, ideal).subset_of(omega))
    throw Error(ErrorCode::certification_failed, "Omega does not contain omega_min");
  if (!omega.subset_of(omega_max(h, delta, ideal)))
    throw Error(ErrorCode::certification_failed, "Omega is not contained in omega_max");
  if (!is_subquasimodule(h, omega))
    throw Error(ErrorCode::certification_failed, "Omega is not an R-subquasimodule");
  if (!is_normal_in(h, omega, delta)) throw Error(ErrorCode::certification_failed, "Omega is not normal in delta");
  return OddFormIdeal(std::move(ideal), std::move(omega));
}

json OddFormIdeal::to_json() const { return {{"ideal", ideal_.to_json()}, {"omega", omega_.to_json()}}; }

OddFormIdeal defined_ideal(const Heisenberg& h, const PointSet& delta, const std::vector<Elem>& y) {
  ElemSet ideal = involution_invariant_ideal(h.quadruple(), y);
  PointSet om = omega_min(h, delta, ideal);
  return OddFormIdeal::certify(h, delta, std::move(ideal), std::move(om));
}

PointDefinedIdeal defined_ideal_from_points(const Heisenberg& h, const PointSet& delta,
                                            const std::vector<HPoint>& z) {
  const FiniteRing& r = h.ring();
  const OddQuadruple& q = h.quadruple();
  for (const HPoint& p : z)
    if (!delta.contains(p))
      throw Error(ErrorCode::point_not_in_parameter, "point (" + std::to_string(p.x) + "," + std::to_string(p.y) + ") not in delta");
  const ElemSet jd = delta.first_coordinates();
  std::vector<Elem> zprime;
  for (const HPoint& p : z) {
    for (Elem j : jd.elements()) zprime.push_back(r.mul(r.mul(q.bar(j), q.mu()), p.x));
    zprime.push_back(p.y);
  }
  ElemSet ideal = involution_invariant_ideal(q, zprime);
  const PointSet om = omega_min(h, delta, ideal);
  const PointSet zr = close_subgroup(h, scaled_family(h, z));

  PointSet span(r.size());
  for (const HPoint& a : om.points())
    for (const HPoint& b : zr.points()) span.insert(h.plus(a, b));

  std::vector<HPoint> gens = om.points();
  gens.insert(gens.end(), z.begin(), z.end());
  PointSet full = close_subquasimodule(h, gens);
  const bool coincided = span == full;
  return {OddFormIdeal::certify(h, delta, std::move(ideal), std::move(full)), coincided};
}

// ---------------------------------------------------------------------------

namespace {

json point_json(HPoint p) { return json::array({p.x, p.y}); }

}  // namespace

using detail::Quantifier;

std::vector<CheckReport> verify_heisenberg_identities(const Heisenberg& h, const Heisenberg& h_inv,
                                                      const PointSet& delta, std::uint64_t seed, std::size_t samples) {
  const FiniteRing& r = h.ring();
  const OddQuadruple& q = h.quadruple();
  const std::size_t n = r.size();
  const std::size_t np = n * n;
  constexpr std::size_t kLimit = std::size_t{1} << 21;
  auto point = [n](std::size_t c) { return HPoint{static_cast<Elem>(c / n), static_cast<Elem>(c % n)}; };
  std::vector<CheckReport> out;

  for (const Heisenberg* hh : {&h, &h_inv}) {
    const std::string tag = hh == &h ? "+1" : "-1";
    CheckReport rep("quasimodule-axioms[" + tag + "]");
    Quantifier quant(np * np * n, 1, kLimit, samples, seed);
    rep.exhaustive = quant.exhaustive();
    for (std::size_t k = 0; k < quant.count(); ++k) {
      const std::size_t c = quant.tuple(k)[0];
      const HPoint a = point(c / (np * n));
      const HPoint b = point((c / n) % np);
      const Elem x = static_cast<Elem>(c % n);
      const Elem y = static_cast<Elem>((c / n) % n);
      const bool ok = hh->scale(a, 0) == HPoint{0, 0} && hh->scale(a, r.one()) == a &&
                      hh->scale(hh->scale(a, x), y) == hh->scale(a, r.mul(x, y)) &&
                      hh->scale(hh->plus(a, b), x) == hh->plus(hh->scale(a, x), hh->scale(b, x)) &&
                      hh->plus(hh->plus(a, b), hh->scale(a, x)) == hh->plus(a, hh->plus(b, hh->scale(a, x))) &&
                      hh->plus(a, HPoint{0, 0}) == a;
      rep.record(ok, [&] { return json{{"a", point_json(a)}, {"b", point_json(b)}, {"x", x}, {"y", y}}; });
    }
    out.push_back(std::move(rep));
  }

  {
    CheckReport neg("negation-formula"), diff("difference-formula"), comm("commutator-formula"),
        tr_add("trace-additive"), comm_mod("commutative-mod-delta-min");
    const PointSet dmin = delta_min(h);
    Quantifier quant(np, 2, kLimit, samples, seed + 1);
    for (auto* rep : {&neg, &diff, &comm, &tr_add, &comm_mod}) rep->exhaustive = quant.exhaustive();
    for (std::size_t k = 0; k < quant.count(); ++k) {
      const auto t = quant.tuple(k);
      const HPoint a = point(t[0]), b = point(t[1]);
      auto wit = [&] { return json{{"a", point_json(a)}, {"b", point_json(b)}}; };
      const HPoint na = h.neg(a);
      neg.record(h.plus(a, na) == HPoint{0, 0} && h.plus(na, a) == HPoint{0, 0} &&
                     na == HPoint{r.neg(a.x), r.sub(r.neg(a.y), r.mul(r.mul(q.bar(a.x), q.mu()), a.x))},
                 wit);
      const Elem dx = r.sub(a.x, b.x);
      diff.record(h.minus(a, b) == HPoint{dx, r.add(r.sub(a.y, b.y), r.mul(r.mul(q.bar(dx), q.mu()), b.x))}, wit);
      const HPoint expect{0, r.sub(r.mul(r.mul(q.bar(b.x), q.mu()), a.x), r.mul(r.mul(q.bar(a.x), q.mu()), b.x))};
      comm.record(h.commutator(a, b) == expect, wit);
      tr_add.record(h.trace(h.plus(a, b)) == r.add(h.trace(a), h.trace(b)), wit);
      comm_mod.record(dmin.contains(h.minus(h.plus(a, b), h.plus(b, a))), wit);
    }
    for (auto* rep : {&neg, &diff, &comm, &tr_add, &comm_mod}) out.push_back(std::move(*rep));
  }

  for (int arity = 2; arity <= 4; ++arity) {
    CheckReport rep("sum-formula[n=" + std::to_string(arity) + "]");
    Quantifier quant(np, arity, kLimit, samples, seed + 2 + arity);
    rep.exhaustive = quant.exhaustive();
    for (std::size_t k = 0; k < quant.count(); ++k) {
      const auto t = quant.tuple(k);
      std::vector<HPoint> pts;
      for (auto c : t) pts.push_back(point(c));
      HPoint acc{0, 0};
      Elem sx = 0, sy = 0, cross = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        acc = h.plus(acc, pts[i]);
        sx = r.add(sx, pts[i].x);
        sy = r.add(sy, pts[i].y);
        for (std::size_t j = i + 1; j < pts.size(); ++j)
          cross = r.add(cross, r.mul(r.mul(q.bar(pts[i].x), q.mu()), pts[j].x));
      }
      rep.record(acc == HPoint{sx, r.sub(sy, cross)}, [&] {
        json w = json::array();
        for (auto p : pts) w.push_back(point_json(p));
        return w;
      });
    }
    out.push_back(std::move(rep));
  }

  {
    CheckReport rep("trace-equivariant");
    Quantifier quant(np * n, 1, kLimit, samples, seed + 9);
    rep.exhaustive = quant.exhaustive();
    for (std::size_t k = 0; k < quant.count(); ++k) {
      const std::size_t c = quant.tuple(k)[0];
      const HPoint a = point(c / n);
      const Elem s = static_cast<Elem>(c % n);
      rep.record(h.trace(h.scale(a, s)) == r.mul(r.mul(q.bar(s), h.trace(a)), s),
                 [&] { return json{{"a", point_json(a)}, {"r", s}}; });
    }
    out.push_back(std::move(rep));
  }

  {
    CheckReport rep("delta-max-negation");
    for (const HPoint& a : delta_max(h).points())
      rep.record(h.neg(a) == HPoint{r.neg(a.x), r.mul(q.bar(a.y), q.lambda())}, [&] { return point_json(a); });
    out.push_back(std::move(rep));
  }

  {
    CheckReport rep("parameter-bounds");
    const PointSet dmin = delta_min(h), dmax = delta_max(h);
    rep.record(is_subquasimodule(h, dmin), [] { return "delta_min not a subquasimodule"; });
    rep.record(is_subquasimodule(h, dmax), [] { return "delta_max not a subquasimodule"; });
    rep.record(dmin.subset_of(delta) && delta.subset_of(dmax), [] { return "delta outside bounds"; });
    rep.record(is_subquasimodule(h, delta), [] { return "delta not a subquasimodule"; });
    out.push_back(std::move(rep));
  }

  {
    CheckReport rep("delta-normal");
    const auto pts = delta.points();
    Quantifier quant(np * pts.size(), 1, kLimit, samples, seed + 10);
    rep.exhaustive = quant.exhaustive();
    for (std::size_t k = 0; k < quant.count(); ++k) {
      const std::size_t c = quant.tuple(k)[0];
      const HPoint g = point(c / pts.size());
      const HPoint a = pts[c % pts.size()];
      rep.record(delta.contains(h.conjugate(g, a)), [&] { return json{{"g", point_json(g)}, {"a", point_json(a)}}; });
    }
    out.push_back(std::move(rep));
  }

  {
    CheckReport rep("inverse-parameter");
    const PointSet inv = inverse_parameter(q, delta);
    bool ok = true;
    try {
      FormParameter::certify(h_inv, inv);
    } catch (const Error&) {
      ok = false;
    }
    rep.record(ok, [] { return "delta^-1 not a form parameter for the inverse quadruple"; });
    rep.record(inverse_parameter(h_inv.quadruple(), inv) == delta, [] { return "(delta^-1)^-1 != delta"; });
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace oddform
