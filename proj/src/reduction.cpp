// Column reductions by upper (block) triangular elementary matrices.

#include <map>
#include <random>

#include "oddform/error.hpp"
#include "oddform/sandwich.hpp"

namespace oddform {

namespace {

json point_json(HPoint p) { return json::array({p.x, p.y}); }

}  // namespace

std::optional<std::vector<Elem>> left_unimodular_certificate(const FiniteRing& r, const std::vector<Elem>& u) {
  // Breadth-first over the left ideal sum R u_i, remembering coefficients.
  std::vector<std::optional<std::vector<Elem>>> coeff(r.size());
  coeff[0] = std::vector<Elem>(u.size(), 0);
  std::vector<Elem> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem s = queue[head];
    if (s == r.one()) return coeff[s];
    for (std::size_t i = 0; i < u.size(); ++i)
      for (Elem c = 1; c < r.size(); ++c) {
        const Elem t = r.add(s, r.mul(c, u[i]));
        if (coeff[t]) continue;
        std::vector<Elem> v = *coeff[s];
        v[i] = r.add(v[i], c);
        coeff[t] = std::move(v);
        queue.push_back(t);
      }
  }
  if (coeff[r.one()]) return coeff[r.one()];
  return std::nullopt;
}

bool is_left_unimodular(const FiniteRing& r, const std::vector<Elem>& u) {
  return left_unimodular_certificate(r, u).has_value();
}

Elem find_unimodular_shift(const FiniteRing& r, const std::vector<Elem>& u, int m) {
  if (m < 1 || u.size() != static_cast<std::size_t>(m) + 1)
    throw Error(ErrorCode::no_shift_found, "column must have m+1 entries with m >= 1");
  if (!is_left_unimodular(r, u)) throw Error(ErrorCode::no_shift_found, "column is not left unimodular");
  const Elem last = u.back();
  std::vector<Elem> w(u.begin(), u.end() - 1);
  const Elem first = w[0];
  for (Elem x = 0; x < r.size(); ++x) {
    w[0] = r.add(first, r.mul(x, last));
    if (is_left_unimodular(r, w)) return x;
  }
  throw Error(ErrorCode::no_shift_found, "no shift makes the shortened column unimodular");
}

json ReductionFactor::to_json() const {
  json j = {{"step", step}};
  if (extra) {
    j["kind"] = "extra";
    j["i"] = i;
    j["a"] = point_json(a);
  } else {
    j["kind"] = "short";
    j["i"] = i;
    j["j"] = this->j;
    j["x"] = x;
  }
  return j;
}

json Reduction::to_json(const FormsContext& ctx) const {
  json fs = json::array();
  for (const auto& f : factors) fs.push_back(f.to_json());
  return {{"certified", certified}, {"factors", fs}, {"notes", notes}, {"f", matrix_to_json(ctx, f)},
          {"result", matrix_to_json(ctx, result)}};
}

bool has_teu_shape(const FormsContext& ctx, const UMatrix& m) {
  const std::size_t d = ctx.dim();
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      const Elem want = p == q ? ctx.ring().one() : 0;
      if (m.e[p * d + q] != want) return false;
    }
  return true;
}

bool has_ueu_shape(const FormsContext& ctx, const UMatrix& m) {
  const Theta th = ctx.theta();
  // Block of a label: 0 for Theta_+, 1 for 0, 2 for Theta_-.
  auto block = [](int i) { return i > 0 ? 0 : (i == 0 ? 1 : 2); };
  for (int i : th.all())
    for (int j : th.all()) {
      const Elem v = m.at(i, j);
      if (block(i) > block(j) && v != 0) return false;
      if (i == 0 && j == 0 && v != ctx.ring().one()) return false;
    }
  return true;
}

namespace {

struct Reducer {
  const FormsContext& ctx;
  const FiniteRing& r;
  UMatrix f;
  UMatrix cur;    // f sigma
  UMatrix aux;    // f sigma xi, or cur
  bool use_aux = false;
  std::vector<ReductionFactor> factors;
  std::vector<std::string> notes;
  bool shape_ok = true;
  bool teu = true;  // required factor shape

  Reducer(const FormsContext& c, const UMatrix& s) : ctx(c), r(c.ring()), f(c.identity()), cur(s), aux(s) {}

  UMatrix matrix_of(const ReductionFactor& fac) const {
    return fac.extra ? ctx.T_extra(fac.i, fac.a) : ctx.T_short(fac.i, fac.j, fac.x);
  }
  void push(ReductionFactor fac) {
    const UMatrix m = matrix_of(fac);
    if (m == ctx.identity()) return;
    if (teu ? !has_teu_shape(ctx, m) : !has_ueu_shape(ctx, m)) shape_ok = false;
    f = ctx.multiply(m, f);
    cur = ctx.multiply(m, cur);
    aux = ctx.multiply(m, aux);
    factors.push_back(std::move(fac));
  }
  void short_move(const char* step, int i, int j, Elem x) {
    if (x != 0) push({step, false, i, j, x, {}});
  }
  void extra_move(const char* step, int i, HPoint a) {
    if (a != HPoint{0, 0}) push({step, true, i, 0, 0, a});
  }
  // The column being reduced.
  UVector target(int c) const { return (use_aux ? aux : cur).column(c); }
};

std::vector<Elem> active_hb(const FormsContext& ctx, const UVector& w, int p) {
  const Theta th = ctx.theta();
  std::vector<Elem> out;
  for (int k = p; k <= th.n; ++k) out.push_back(w[th.pos(k)]);
  for (int k = -th.n; k <= -p; ++k) out.push_back(w[th.pos(k)]);
  return out;
}

std::vector<Elem> upper_part(const FormsContext& ctx, const UVector& w, int p) {
  const Theta th = ctx.theta();
  std::vector<Elem> out;
  for (int k = p; k <= th.n; ++k) out.push_back(w[th.pos(k)]);
  return out;
}

// Extra short correction making the active hyperbolic part of column c
// unimodular. `m` is the unitary matrix whose inverse row p supplies v_0.
void step_extra(Reducer& red, int c, int p, const UMatrix& m) {
  const FormsContext& ctx = red.ctx;
  const FiniteRing& r = red.r;
  const Theta th = ctx.theta();
  const UVector w = red.target(c);
  if (is_left_unimodular(r, active_hb(ctx, w, p))) return;
  const UMatrix mi = ctx.inv(m);
  const Elem v0 = mi.at(p, 0);
  std::vector<Elem> col = active_hb(ctx, w, p);
  col.push_back(r.mul(v0, w[th.pos(0)]));
  if (is_left_unimodular(r, col)) {
    const Elem x = find_unimodular_shift(r, col, static_cast<int>(col.size()) - 1);
    const Elem xb = ctx.bar(x);
    const HPoint qa = ctx.heis().scale(ctx.form_q(m.column(-p)), r.neg(xb));
    // Move into Delta^-1: (x, z) -> (x, bar(lambda) bar(z) lambda).
    const HPoint a{qa.x, r.mul(r.mul(ctx.lam(-1), ctx.bar(qa.y)), ctx.lam(1))};
    if (ctx.delta(-1).contains(a)) {
      const UVector w2 = ctx.apply(ctx.T_extra(p, a), w);
      if (is_left_unimodular(r, active_hb(ctx, w2, p))) {
        red.extra_move("extra-short", p, a);
        return;
      }
    }
  }
  // Search over all of Delta^-1.
  for (const HPoint& a : ctx.delta(-1).points()) {
    const UVector w2 = ctx.apply(ctx.T_extra(p, a), w);
    if (is_left_unimodular(r, active_hb(ctx, w2, p))) {
      red.notes.push_back("extra-short step by search at index " + std::to_string(p));
      red.extra_move("extra-short-search", p, a);
      return;
    }
  }
  throw Error(ErrorCode::reduction_failed, "no extra short correction makes the column unimodular");
}

// Exhaustive search over products of T_(k,-l)(x) and long roots T_k(0,y)
// (the gamma block) making the upper part unimodular.
void step_gamma(Reducer& red, int c, int p) {
  const FormsContext& ctx = red.ctx;
  const FiniteRing& r = red.r;
  const Theta th = ctx.theta();
  const UVector w = red.target(c);
  if (is_left_unimodular(r, upper_part(ctx, w, p))) return;
  struct Move {
    bool extra;
    int i, j;
    Elem x;
    HPoint a;
  };
  std::vector<Move> moves;
  for (int k = p; k <= th.n; ++k)
    for (int l = p; l <= th.n; ++l)
      if (k != l)
        for (Elem x = 1; x < r.size(); ++x) moves.push_back({false, k, -l, x, {}});
  const ElemSet longs = ctx.delta(-1).zero_fiber();
  for (int k = p; k <= th.n; ++k)
    for (Elem y : longs.elements())
      if (y != 0) moves.push_back({true, k, 0, 0, {0, y}});
  std::vector<UMatrix> mats;
  for (const Move& mv : moves) mats.push_back(mv.extra ? ctx.T_extra(mv.i, mv.a) : ctx.T_short(mv.i, mv.j, mv.x));

  std::map<std::vector<Elem>, std::pair<std::vector<Elem>, std::size_t>> parent;
  std::vector<UVector> queue{w};
  parent[upper_part(ctx, w, p)] = {{}, moves.size()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const UVector cur = queue[head];
    const std::vector<Elem> key = upper_part(ctx, cur, p);
    for (std::size_t k = 0; k < moves.size(); ++k) {
      UVector nxt = ctx.apply(mats[k], cur);
      std::vector<Elem> nk = upper_part(ctx, nxt, p);
      if (parent.count(nk)) continue;
      parent[nk] = {key, k};
      if (is_left_unimodular(r, nk)) {
        std::vector<std::size_t> path;
        for (std::vector<Elem> at = nk; parent[at].second != moves.size(); at = parent[at].first)
          path.push_back(parent[at].second);
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
          const Move& mv = moves[*it];
          if (mv.extra)
            red.extra_move("gamma", mv.i, mv.a);
          else
            red.short_move("gamma", mv.i, mv.j, mv.x);
        }
        return;
      }
      queue.push_back(std::move(nxt));
    }
  }
  throw Error(ErrorCode::reduction_failed, "no gamma block makes the upper part unimodular");
}

// Repeated unimodular shifts u_p += x u_m (m = n..p+1) leave u_p left
// invertible.
void step_shift(Reducer& red, int c, int p) {
  const FormsContext& ctx = red.ctx;
  const Theta th = ctx.theta();
  for (int m = th.n; m > p; --m) {
    const UVector w = red.target(c);
    std::vector<Elem> col;
    for (int k = p; k <= m; ++k) col.push_back(w[th.pos(k)]);
    const Elem x = find_unimodular_shift(red.r, col, m - p);
    red.short_move("shift", p, m, x);
  }
  if (red.r.left_inverses(red.target(c)[th.pos(p)]).empty())
    throw Error(ErrorCode::reduction_failed, "corner entry is not left invertible after the shifts");
}

// With u_p a unit: clear u_(p+1..n), then turn u_p into 1.
void step_normalize(Reducer& red, int c, int p) {
  const FormsContext& ctx = red.ctx;
  const FiniteRing& r = red.r;
  const Theta th = ctx.theta();
  const auto inv = r.inverse(red.target(c)[th.pos(p)]);
  if (!inv) throw Error(ErrorCode::reduction_failed, "corner entry is not a unit");
  for (int k = p + 1; k <= th.n; ++k)
    red.short_move("clear", k, p, r.neg(r.mul(red.target(c)[th.pos(k)], *inv)));
  const Elem a = red.target(c)[th.pos(p)];
  if (a != r.one()) {
    red.short_move("unit", p + 1, p, *inv);
    red.short_move("unit", p, p + 1, r.sub(r.one(), a));
    red.short_move("unit", p + 1, p, r.neg(r.one()));
  }
}

void require_unitary(const FormsContext& ctx, const UMatrix& s) {
  if (!ctx.is_unitary(s).unitary) throw Error(ErrorCode::reduction_failed, "input is not unitary");
}

}  // namespace

Reduction reduce_first_entry(const FormsContext& ctx, const UMatrix& sigma) {
  if (ctx.n() < 2) throw Error(ErrorCode::bad_indices, "reduce_first_entry needs n >= 2");
  require_unitary(ctx, sigma);
  Reducer red(ctx, sigma);
  red.teu = true;
  step_extra(red, 1, 1, red.cur);
  step_gamma(red, 1, 1);
  step_shift(red, 1, 1);
  Reduction out{red.f, red.cur, red.factors, false, red.notes};
  out.certified = red.shape_ok && !ctx.ring().left_inverses(red.cur.at(1, 1)).empty() &&
                  ctx.multiply(red.f, sigma) == red.cur;
  if (!red.shape_ok) out.notes.push_back("factor outside TEU");
  return out;
}

Reduction reduce_two_columns(const FormsContext& ctx, const UMatrix& sigma) {
  const int n = ctx.n();
  if (n < 3) throw Error(ErrorCode::bad_indices, "reduce_two_columns needs n >= 3");
  require_unitary(ctx, sigma);
  const FiniteRing& r = ctx.ring();
  const Heisenberg& h = ctx.heis();
  Reducer red(ctx, sigma);
  red.teu = false;

  // First column to e_1 in the upper part.
  step_extra(red, 1, 1, red.cur);
  step_gamma(red, 1, 1);
  step_shift(red, 1, 1);
  step_normalize(red, 1, 1);
  const UMatrix tau = red.cur;

  // Clear the lower part of column 1 to see the relevant unitary matrix:
  // epsilon tau xi has first column e_1, row -1 equal to e_-1^t and zeros in
  // rows 1, -1 of column 2.
  const Elem F = tau.at(1, 2);
  const UMatrix xi = ctx.T_short(1, 2, r.neg(F));
  UMatrix eps = ctx.identity();
  for (int j = -n; j <= -2; ++j) eps = ctx.multiply(ctx.T_short(j, 1, r.neg(tau.at(j, 1))), eps);
  const UVector u3 = ctx.apply(eps, tau.column(1));
  const HPoint xy = ctx.form_q(u3);
  eps = ctx.multiply(ctx.T_extra(-1, h.neg(xy)), eps);
  const UMatrix N = ctx.multiply(ctx.multiply(eps, tau), xi);
  if (N.column(1) != ctx.basis(1)) red.notes.push_back("epsilon did not reduce column 1 to e_1");

  red.aux = ctx.multiply(red.cur, xi);
  red.use_aux = true;
  step_extra(red, 2, 2, N);
  step_gamma(red, 2, 2);
  step_shift(red, 2, 2);
  step_normalize(red, 2, 2);
  red.use_aux = false;
  for (int j = 2; j <= n; ++j) red.short_move("clear-column-1", j, 1, r.neg(red.cur.at(j, 1)));
  red.short_move("clear-corner", 1, 2, r.neg(red.cur.at(1, 2)));

  Reduction out{red.f, red.cur, red.factors, false, red.notes};
  bool normal = true;
  for (int k = 1; k <= n; ++k) {
    if (red.cur.at(k, 1) != (k == 1 ? r.one() : 0)) normal = false;
    if (red.cur.at(k, 2) != (k == 2 ? r.one() : 0)) normal = false;
  }
  out.certified = red.shape_ok && normal && ctx.multiply(red.f, sigma) == red.cur;
  if (!red.shape_ok) out.notes.push_back("factor outside UEU");
  return out;
}

std::vector<CheckReport> verify_reductions(const FormsContext& ctx, std::size_t count, std::size_t length,
                                           std::uint64_t seed) {
  CheckReport first("reduce-first-entry"), two("reduce-two-columns");
  first.exhaustive = two.exhaustive = false;
  const std::vector<UMatrix> gens = ctx.elementary_generators();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::size_t searches = 0;
  for (std::size_t k = 0; k < count; ++k) {
    UMatrix s = ctx.identity();
    for (std::size_t t = 0; t < length; ++t) s = ctx.multiply(s, gens[pick(rng)]);
    auto run = [&](CheckReport& rep, bool teu) {
      try {
        const Reduction red = teu ? reduce_first_entry(ctx, s) : reduce_two_columns(ctx, s);
        bool shapes = true;
        for (const auto& fac : red.factors) {
          const UMatrix m = fac.extra ? ctx.T_extra(fac.i, fac.a) : ctx.T_short(fac.i, fac.j, fac.x);
          if (teu ? !has_teu_shape(ctx, m) : !has_ueu_shape(ctx, m)) shapes = false;
        }
        for (const auto& note : red.notes)
          if (note.find("search") != std::string::npos) ++searches;
        const bool ok = red.certified && shapes && (teu ? has_teu_shape(ctx, red.f) : has_ueu_shape(ctx, red.f)) &&
                        ctx.is_unitary(red.result).unitary;
        rep.record(ok, [&] { return json{{"sigma", matrix_to_json(ctx, s)}, {"reduction", red.to_json(ctx)}}; });
      } catch (const Error& e) {
        rep.record(false, [&] { return json{{"sigma", matrix_to_json(ctx, s)}, {"error", e.what()}}; });
      }
    };
    run(first, true);
    if (ctx.n() >= 3) run(two, false);
  }
  first.notes = {{"length", length}, {"extra_short_searches", searches}};
  two.notes = {{"length", length}};
  std::vector<CheckReport> out{first};
  if (ctx.n() >= 3) out.push_back(two);
  return out;
}

}  // namespace oddform
