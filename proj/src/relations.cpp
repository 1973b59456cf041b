#include <functional>
#include <random>

#include "oddform/unitary.hpp"
#include "sampling.hpp"

namespace oddform {

namespace {

using Pattern = std::vector<int>;
using Values = std::vector<std::size_t>;

// Runs `body` over every (pattern, values) case, or over `samples` random
// cases when not exhaustive.
void sweep(CheckReport& rep, const std::vector<Pattern>& patterns,
           const std::function<Values(const Pattern&)>& sizes, bool exhaustive, std::size_t samples,
           std::mt19937_64& rng, const std::function<bool(const Pattern&, const Values&)>& body) {
  rep.exhaustive = exhaustive;
  auto run = [&](const Pattern& p, const Values& v) {
    rep.record(body(p, v), [&] { return json{{"indices", p}, {"values", v}}; });
  };
  if (patterns.empty()) return;
  if (exhaustive) {
    for (const Pattern& p : patterns) {
      const Values sz = sizes(p);
      bool empty = false;
      for (auto s : sz) empty = empty || s == 0;
      if (empty) continue;
      Values v(sz.size(), 0);
      while (true) {
        run(p, v);
        std::size_t k = v.size();
        bool done = true;
        while (k > 0) {
          --k;
          if (++v[k] < sz[k]) {
            done = false;
            break;
          }
          v[k] = 0;
        }
        if (done) break;
      }
    }
    return;
  }
  std::uniform_int_distribution<std::size_t> pick_pattern(0, patterns.size() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const Pattern& p = patterns[pick_pattern(rng)];
    const Values sz = sizes(p);
    Values v(sz.size());
    bool empty = false;
    for (std::size_t k = 0; k < sz.size(); ++k) {
      if (sz[k] == 0) {
        empty = true;
        break;
      }
      v[k] = std::uniform_int_distribution<std::size_t>(0, sz[k] - 1)(rng);
    }
    if (!empty) run(p, v);
  }
}

}  // namespace

std::vector<CheckReport> verify_relations(const FormsContext& ctx, std::uint64_t seed, std::size_t exhaustive_values,
                                          std::size_t samples) {
  const FiniteRing& r = ctx.ring();
  const OddQuadruple& q = ctx.quadruple();
  const Theta th = ctx.theta();
  const auto hb = th.hb();
  const bool exhaustive = r.size() <= exhaustive_values;
  std::mt19937_64 rng(seed);
  const UMatrix id = ctx.identity();
  const Elem mu = q.mu();
  const std::vector<HPoint> pts_plus = ctx.delta(1).points();
  const std::vector<HPoint> pts_minus = ctx.delta(-1).points();
  auto pts = [&](int i) -> const std::vector<HPoint>& { return Theta::eps(i) > 0 ? pts_minus : pts_plus; };
  const std::size_t rs = r.size();
  auto L = [&](int e) { return ctx.lam(e); };
  auto eps = [](int i) { return Theta::eps(i); };
  // c(i,j,x) = lambda^((eps(j)-1)/2) bar(x) lambda^((1-eps(i))/2)
  auto twist = [&](int i, int j, Elem x) { return r.mul(r.mul(L((eps(j) - 1) / 2), q.bar(x)), L((1 - eps(i)) / 2)); };

  std::vector<Pattern> pairs, triples_s4, quads_s3, pairs_hb2, singles, triples_se1;
  for (int i : hb)
    for (int j : hb) {
      if (i == j || i == -j) continue;
      pairs.push_back({i, j});
      for (int k : hb) {
        if (k == i || k == -i || k == j || k == -j) continue;
        triples_s4.push_back({i, j, k});
      }
      for (int k : hb) {
        for (int l : hb) {
          if (k == l || k == -l) continue;
          if (k != j && k != -i && l != i && l != -j) quads_s3.push_back({i, j, k, l});
        }
        if (k != j && k != -i) triples_se1.push_back({i, j, k});
      }
    }
  for (int i : hb) {
    singles.push_back({i});
    for (int j : hb)
      if (j != i && j != -i) pairs_hb2.push_back({i, j});
  }
  auto two_ring = [&](const Pattern&) { return Values{rs, rs}; };
  std::vector<CheckReport> out;

  {
    CheckReport rep("S1");
    sweep(rep, pairs, [&](const Pattern&) { return Values{rs}; }, exhaustive, samples, rng, [&](const Pattern& p, const Values& v) {
      const int i = p[0], j = p[1];
      const Elem x = static_cast<Elem>(v[0]);
      return ctx.T_short(i, j, x) == ctx.T_short(-j, -i, r.neg(twist(i, j, x)));
    });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("S2");
    sweep(rep, pairs, two_ring, exhaustive, samples, rng, [&](const Pattern& p, const Values& v) {
      const Elem x = static_cast<Elem>(v[0]), y = static_cast<Elem>(v[1]);
      return ctx.multiply(ctx.T_short(p[0], p[1], x), ctx.T_short(p[0], p[1], y)) == ctx.T_short(p[0], p[1], r.add(x, y));
    });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("S3");
    sweep(rep, quads_s3, two_ring, exhaustive, samples, rng, [&](const Pattern& p, const Values& v) {
      return ctx.commutator(ctx.T_short(p[0], p[1], static_cast<Elem>(v[0])),
                            ctx.T_short(p[2], p[3], static_cast<Elem>(v[1]))) == id;
    });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("S4");
    sweep(rep, triples_s4, two_ring, exhaustive, samples, rng, [&](const Pattern& p, const Values& v) {
      const int i = p[0], j = p[1], k = p[2];
      const Elem x = static_cast<Elem>(v[0]), y = static_cast<Elem>(v[1]);
      return ctx.commutator(ctx.T_short(i, j, x), ctx.T_short(j, k, y)) == ctx.T_short(i, k, r.mul(x, y));
    });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("S5");
    sweep(rep, pairs, two_ring, exhaustive, samples, rng, [&](const Pattern& p, const Values& v) {
      const int i = p[0], j = p[1];
      const Elem x = static_cast<Elem>(v[0]), y = static_cast<Elem>(v[1]);
      const Elem tail = r.mul(r.mul(r.mul(L((-1 - eps(i)) / 2), q.bar(y)), q.bar(x)), L((1 - eps(i)) / 2));
      return ctx.commutator(ctx.T_short(i, j, x), ctx.T_short(j, -i, y)) ==
             ctx.T_extra_raw(i, {0, r.sub(r.mul(x, y), tail)});
    });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("E1");
    sweep(rep, singles, [&](const Pattern& p) { return Values{pts(p[0]).size(), pts(p[0]).size()}; }, exhaustive, samples,
          rng, [&](const Pattern& p, const Values& v) {
            const int i = p[0];
            const HPoint a = pts(i)[v[0]], b = pts(i)[v[1]];
            return ctx.multiply(ctx.T_extra(i, a), ctx.T_extra(i, b)) == ctx.T_extra(i, ctx.heis(-eps(i)).plus(a, b));
          });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("E2");
    sweep(rep, pairs_hb2, [&](const Pattern& p) { return Values{pts(p[0]).size(), pts(p[1]).size()}; }, exhaustive,
          samples, rng, [&](const Pattern& p, const Values& v) {
            const int i = p[0], j = p[1];
            const HPoint a = pts(i)[v[0]], b = pts(j)[v[1]];
            const Elem x = r.neg(r.mul(r.mul(r.mul(L(-(1 + eps(i)) / 2), q.bar(a.x)), mu), b.x));
            return ctx.commutator(ctx.T_extra(i, a), ctx.T_extra(j, b)) == ctx.T_short(i, -j, x);
          });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("E3");
    sweep(rep, singles, [&](const Pattern& p) { return Values{pts(p[0]).size(), pts(p[0]).size()}; }, exhaustive, samples,
          rng, [&](const Pattern& p, const Values& v) {
            const int i = p[0];
            const HPoint a = pts(i)[v[0]], b = pts(i)[v[1]];
            const Elem inner = r.sub(r.mul(r.mul(q.bar(a.x), mu), b.x), r.mul(r.mul(q.bar(b.x), mu), a.x));
            const Elem y = r.neg(r.mul(L(-(1 + eps(i)) / 2), inner));
            return ctx.commutator(ctx.T_extra(i, a), ctx.T_extra(i, b)) == ctx.T_extra_raw(i, {0, y});
          });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("SE1");
    sweep(rep, triples_se1, [&](const Pattern& p) { return Values{rs, pts(p[2]).size()}; }, exhaustive, samples, rng,
          [&](const Pattern& p, const Values& v) {
            return ctx.commutator(ctx.T_short(p[0], p[1], static_cast<Elem>(v[0])), ctx.T_extra(p[2], pts(p[2])[v[1]])) ==
                   id;
          });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("SE2");
    sweep(rep, pairs, [&](const Pattern& p) { return Values{rs, pts(p[1]).size()}; }, exhaustive, samples, rng,
          [&](const Pattern& p, const Values& v) {
            const int i = p[0], j = p[1];
            const Elem x = static_cast<Elem>(v[0]);
            const HPoint a = pts(j)[v[1]];
            const Elem c = twist(i, j, x);
            const UMatrix rhs = ctx.multiply(ctx.T_short(j, -i, r.mul(a.y, c)),
                                             ctx.T_extra_raw(i, {r.mul(a.x, c), r.mul(r.mul(x, a.y), c)}));
            return ctx.commutator(ctx.T_short(i, j, x), ctx.T_extra(j, a)) == rhs;
          });
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<CheckReport> verify_permutation_conjugations(const FormsContext& ctx, std::uint64_t seed,
                                                         std::size_t exhaustive_values, std::size_t samples) {
  const FiniteRing& r = ctx.ring();
  const Theta th = ctx.theta();
  const auto hb = th.hb();
  const bool exhaustive = r.size() <= exhaustive_values;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  const std::size_t rs = r.size();
  const std::vector<HPoint> pts_plus = ctx.delta(1).points();
  const std::vector<HPoint> pts_minus = ctx.delta(-1).points();
  auto pts = [&](int i) -> const std::vector<HPoint>& { return Theta::eps(i) > 0 ? pts_minus : pts_plus; };

  std::vector<Pattern> triples, pairs;
  for (int i : hb)
    for (int j : hb) {
      if (j == i || j == -i) continue;
      pairs.push_back({i, j});
      for (int k : hb)
        if (k != i && k != -i && k != j && k != -j) triples.push_back({i, j, k});
    }
  std::vector<CheckReport> out;
  {
    CheckReport rep("P-shape");
    rep.exhaustive = true;
    for (const Pattern& p : pairs) {
      const UMatrix a = ctx.P(p[0], p[1]);
      rep.record(a == ctx.P_explicit(p[0], p[1]) && ctx.multiply(a, ctx.P(p[1], p[0])) == ctx.identity(),
                 [&] { return json{{"indices", p}}; });
    }
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("P-conj-1");
    sweep(rep, triples, [&](const Pattern&) { return Values{rs}; }, exhaustive, samples, rng,
          [&](const Pattern& p, const Values& v) {
            const int i = p[0], j = p[1], k = p[2];
            const Elem x = static_cast<Elem>(v[0]);
            return ctx.conjugate(ctx.P(k, i), ctx.T_short(i, j, x)) == ctx.T_short(k, j, x);
          });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("P-conj-2");
    sweep(rep, triples, [&](const Pattern&) { return Values{rs}; }, exhaustive, samples, rng,
          [&](const Pattern& p, const Values& v) {
            const int i = p[0], j = p[1], k = p[2];
            const Elem x = static_cast<Elem>(v[0]);
            return ctx.conjugate(ctx.P(k, j), ctx.T_short(i, j, x)) == ctx.T_short(i, k, x);
          });
    out.push_back(std::move(rep));
  }
  {
    CheckReport rep("P-conj-3");
    sweep(rep, pairs, [&](const Pattern& p) { return Values{pts(p[0]).size()}; }, exhaustive, samples, rng,
          [&](const Pattern& p, const Values& v) {
            const int i = p[0], k = p[1];
            const HPoint a = pts(i)[v[0]];
            const Elem z = r.mul(ctx.lam((Theta::eps(i) - Theta::eps(k)) / 2), a.y);
            return ctx.conjugate(ctx.P(-k, -i), ctx.T_extra(i, a)) == ctx.T_extra_raw(k, {a.x, z});
          });
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<CheckReport> verify_forms(const FormsContext& ctx, std::uint64_t seed, std::size_t samples) {
  using detail::Quantifier;
  const FiniteRing& r = ctx.ring();
  const OddQuadruple& q = ctx.quadruple();
  const Heisenberg& h = ctx.heis();
  const std::size_t d = ctx.dim();
  const std::size_t rs = r.size();
  double mcount = 1;
  for (std::size_t k = 0; k < d; ++k) mcount *= static_cast<double>(rs);
  const std::size_t msize = mcount > 1e15 ? std::size_t{1} << 50 : static_cast<std::size_t>(mcount);
  constexpr std::size_t kLimit = std::size_t{1} << 21;
  auto vec = [&](std::size_t code) {
    UVector u(d);
    for (std::size_t k = d; k-- > 0;) {
      u[k] = static_cast<Elem>(code % rs);
      code /= rs;
    }
    return u;
  };
  auto add = [&](const UVector& a, const UVector& b) {
    UVector c(d);
    for (std::size_t k = 0; k < d; ++k) c[k] = r.add(a[k], b[k]);
    return c;
  };
  auto scal = [&](const UVector& a, Elem x) {
    UVector c(d);
    for (std::size_t k = 0; k < d; ++k) c[k] = r.mul(a[k], x);
    return c;
  };
  const PointSet dmin = delta_min(h);
  std::vector<CheckReport> out;
  {
    CheckReport hermitian("b-hermitian"), qsum("q-sum"), trq("trace-of-q"), biadd("b-biadditive");
    Quantifier quant(msize, 2, kLimit, samples, seed);
    for (auto* rep : {&hermitian, &qsum, &trq, &biadd}) rep->exhaustive = quant.exhaustive();
    for (std::size_t k = 0; k < quant.count(); ++k) {
      const auto t = quant.tuple(k);
      const UVector u = vec(t[0]), v = vec(t[1]);
      auto wit = [&] { return json{{"u", u}, {"v", v}}; };
      hermitian.record(ctx.form_b(u, v) == r.mul(q.bar(ctx.form_b(v, u)), q.lambda()), wit);
      const HPoint rhs = h.plus(h.plus(ctx.form_q(u), ctx.form_q(v)), HPoint{0, ctx.form_b(u, v)});
      qsum.record(dmin.contains(h.minus(ctx.form_q(add(u, v)), rhs)), wit);
      trq.record(h.trace(ctx.form_q(u)) == ctx.form_b(u, u), wit);
      const UVector w = vec((t[0] * 7 + t[1] * 13 + 5) % msize);
      biadd.record(ctx.form_b(add(u, w), v) == r.add(ctx.form_b(u, v), ctx.form_b(w, v)) &&
                       ctx.form_b(u, add(v, w)) == r.add(ctx.form_b(u, v), ctx.form_b(u, w)),
                   wit);
    }
    for (auto* rep : {&hermitian, &qsum, &trq, &biadd}) out.push_back(std::move(*rep));
  }
  {
    CheckReport sesq("b-sesquilinear"), qscale("q-scale");
    Quantifier quant(msize * rs, 2, kLimit, samples, seed + 1);
    sesq.exhaustive = qscale.exhaustive = quant.exhaustive();
    for (std::size_t k = 0; k < quant.count(); ++k) {
      const auto t = quant.tuple(k);
      const UVector u = vec(t[0] / rs), v = vec(t[1] / rs);
      const Elem x = static_cast<Elem>(t[0] % rs), y = static_cast<Elem>(t[1] % rs);
      auto wit = [&] { return json{{"u", u}, {"v", v}, {"x", x}, {"y", y}}; };
      sesq.record(ctx.form_b(scal(u, x), scal(v, y)) == r.mul(r.mul(q.bar(x), ctx.form_b(u, v)), y), wit);
      qscale.record(ctx.form_q(scal(u, x)) == h.scale(ctx.form_q(u), x), wit);
    }
    out.push_back(std::move(sesq));
    out.push_back(std::move(qscale));
  }
  return out;
}

}  // namespace oddform
