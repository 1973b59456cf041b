#include "oddform/unitary.hpp"

#include <algorithm>
#include <deque>

namespace oddform {

std::vector<int> Theta::all() const {
  std::vector<int> out;
  for (std::size_t p = 0; p < dim(); ++p) out.push_back(label(p));
  return out;
}

std::vector<int> Theta::hb() const {
  std::vector<int> out;
  for (int i : all())
    if (i != 0) out.push_back(i);
  return out;
}

UVector UMatrix::column(int j) const {
  const std::size_t d = dim();
  const std::size_t c = Theta{n}.pos(j);
  UVector out(d);
  for (std::size_t r = 0; r < d; ++r) out[r] = e[r * d + c];
  return out;
}

std::size_t UMatrixHash::operator()(const UMatrix& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Elem x : m.e) h = (h ^ x) * 1099511628211ull;
  return h;
}

// ---------------------------------------------------------------------------

FormsContext::FormsContext(int n, std::shared_ptr<const OddQuadruple> q, PointSet delta)
    : n_(n),
      q_(q),
      q_inv_(oddform::inverse_quadruple(*q)),
      h_(q),
      h_inv_(q_inv_),
      delta_(FormParameter::certify(h_, std::move(delta)).elements()),
      delta_inv_(inverse_parameter(*q_, delta_)) {
  if (n < 1) throw Error(ErrorCode::size_mismatch, "n must be >= 1");
}

json FormsContext::digest() const {
  const FiniteRing& r = ring();
  return {{"n", n_},
          {"ring", r.spec().digest()},
          {"lambda", r.render(q_->lambda())},
          {"mu", r.render(q_->mu())},
          {"delta_size", delta_.size()}};
}

UMatrix FormsContext::identity() const {
  UMatrix m(n_);
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i) m.e[i * d + i] = ring().one();
  return m;
}

UMatrix FormsContext::multiply(const UMatrix& a, const UMatrix& b) const {
  const FiniteRing& r = ring();
  const std::size_t d = dim();
  UMatrix c(n_);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const Elem aik = a.e[i * d + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const Elem bkj = b.e[k * d + j];
        if (bkj == 0) continue;
        c.e[i * d + j] = r.add(c.e[i * d + j], r.mul(aik, bkj));
      }
    }
  return c;
}

UVector FormsContext::apply(const UMatrix& a, const UVector& u) const {
  const FiniteRing& r = ring();
  const std::size_t d = dim();
  UVector out(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    Elem acc = 0;
    for (std::size_t k = 0; k < d; ++k) acc = r.add(acc, r.mul(a.e[i * d + k], u[k]));
    out[i] = acc;
  }
  return out;
}

namespace {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  long long t = 0, nt = 1;
  long long rr = static_cast<long long>(m), nr = static_cast<long long>(a % m);
  while (nr) {
    const long long q = rr / nr;
    t -= q * nt;
    std::swap(t, nt);
    rr -= q * nr;
    std::swap(rr, nr);
  }
  if (rr != 1) return 0;
  if (t < 0) t += static_cast<long long>(m);
  return static_cast<std::uint64_t>(t);
}

// Inverse of an s x s matrix over Z/pk where pk is a power of the prime p.
std::optional<std::vector<std::uint64_t>> invert_mod_prime_power(std::vector<std::uint64_t> a, std::size_t s,
                                                                 std::uint64_t p, std::uint64_t pk) {
  std::vector<std::uint64_t> inv(s * s, 0);
  for (std::size_t i = 0; i < s; ++i) inv[i * s + i] = 1 % pk;
  for (auto& v : a) v %= pk;
  for (std::size_t c = 0; c < s; ++c) {
    std::size_t piv = s;
    for (std::size_t r = c; r < s; ++r)
      if (a[r * s + c] % p != 0) {
        piv = r;
        break;
      }
    if (piv == s) return std::nullopt;
    if (piv != c)
      for (std::size_t k = 0; k < s; ++k) {
        std::swap(a[piv * s + k], a[c * s + k]);
        std::swap(inv[piv * s + k], inv[c * s + k]);
      }
    const std::uint64_t f = mod_inverse(a[c * s + c], pk);
    for (std::size_t k = 0; k < s; ++k) {
      a[c * s + k] = a[c * s + k] * f % pk;
      inv[c * s + k] = inv[c * s + k] * f % pk;
    }
    for (std::size_t r = 0; r < s; ++r) {
      if (r == c) continue;
      const std::uint64_t g = a[r * s + c];
      if (!g) continue;
      for (std::size_t k = 0; k < s; ++k) {
        a[r * s + k] = (a[r * s + k] + (pk - g) * a[c * s + k]) % pk;
        inv[r * s + k] = (inv[r * s + k] + (pk - g) * inv[c * s + k]) % pk;
      }
    }
  }
  return inv;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> prime_powers(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    std::uint64_t pk = 1;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    out.emplace_back(p, pk);
  }
  if (m > 1) out.emplace_back(m, m);
  return out;
}

}  // namespace

std::optional<UMatrix> FormsContext::inverse(const UMatrix& a) const {
  const FiniteRing& r = ring();
  const std::size_t d = dim();
  const std::size_t rd = r.rep_dim();
  const std::size_t s = d * rd;
  const std::uint64_t m = r.rep_modulus();

  std::vector<std::uint64_t> big(s * s, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto blk = r.rep(a.e[i * d + j]);
      for (std::size_t u = 0; u < rd; ++u)
        for (std::size_t v = 0; v < rd; ++v) big[(i * rd + u) * s + j * rd + v] = blk[u * rd + v];
    }

  // Invert modulo each prime power of m and glue the results by CRT.
  std::vector<std::uint64_t> result(s * s, 0);
  std::uint64_t modulus = 1;
  for (auto [p, pk] : prime_powers(m)) {
    auto part = invert_mod_prime_power(big, s, p, pk);
    if (!part) return std::nullopt;
    if (modulus == 1) {
      result = *part;
    } else {
      const std::uint64_t mi = mod_inverse(modulus % pk, pk);
      for (std::size_t k = 0; k < s * s; ++k) {
        const std::uint64_t diff = ((*part)[k] + pk - result[k] % pk) % pk;
        result[k] += modulus * (diff * mi % pk);
      }
    }
    modulus *= pk;
  }

  UMatrix out(n_);
  std::vector<std::uint32_t> blk(rd * rd);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t u = 0; u < rd; ++u)
        for (std::size_t v = 0; v < rd; ++v)
          blk[u * rd + v] = static_cast<std::uint32_t>(result[(i * rd + u) * s + j * rd + v]);
      auto e = r.from_rep(blk);
      if (!e) return std::nullopt;
      out.e[i * d + j] = *e;
    }
  const UMatrix id = identity();
  if (multiply(a, out) != id || multiply(out, a) != id) return std::nullopt;
  return out;
}

UMatrix FormsContext::inv(const UMatrix& a) const {
  auto r = inverse(a);
  if (!r) throw Error(ErrorCode::not_invertible, "matrix is not invertible");
  return *r;
}

UMatrix FormsContext::commutator(const UMatrix& a, const UMatrix& b) const {
  return multiply(multiply(a, b), multiply(inv(a), inv(b)));
}

UMatrix FormsContext::conjugate(const UMatrix& h, const UMatrix& g) const {
  return multiply(multiply(h, g), inv(h));
}

Elem FormsContext::form_b(const UVector& u, const UVector& v) const {
  const FiniteRing& r = ring();
  const Theta th = theta();
  Elem acc = r.mul(r.mul(bar(u[th.pos(0)]), q_->mu()), v[th.pos(0)]);
  for (int i = 1; i <= n_; ++i) {
    acc = r.add(acc, r.mul(bar(u[th.pos(i)]), v[th.pos(-i)]));
    acc = r.add(acc, r.mul(r.mul(bar(u[th.pos(-i)]), q_->lambda()), v[th.pos(i)]));
  }
  return acc;
}

HPoint FormsContext::form_q(const UVector& u) const {
  const FiniteRing& r = ring();
  const Theta th = theta();
  Elem acc = 0;
  for (int i = 1; i <= n_; ++i) acc = r.add(acc, r.mul(bar(u[th.pos(i)]), u[th.pos(-i)]));
  return {u[th.pos(0)], acc};
}

UVector FormsContext::basis(int i) const {
  UVector u(dim(), 0);
  u[theta().pos(i)] = ring().one();
  return u;
}

UnitaryCertificate FormsContext::is_unitary(const UMatrix& s) const { return is_unitary(s, inv(s)); }

UnitaryCertificate FormsContext::is_unitary(const UMatrix& s, const UMatrix& si) const {
  const FiniteRing& r = ring();
  const Elem mu = q_->mu();
  UnitaryCertificate cert;
  auto fail = [&](std::string what) {
    if (cert.violations.size() < 8) cert.violations.push_back(std::move(what));
  };
  const Theta th = theta();
  for (int i : th.hb()) {
    const int ei = Theta::eps(i);
    for (int j : th.hb()) {
      const int ej = Theta::eps(j);
      const Elem rhs = r.mul(r.mul(lam(-(ei + 1) / 2), bar(s.at(-j, -i))), lam((ej + 1) / 2));
      if (si.at(i, j) != rhs) fail("inverse(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    if (r.mul(mu, si.at(0, i)) != r.mul(bar(s.at(-i, 0)), lam((ei + 1) / 2)))
      fail("mu*inverse(0," + std::to_string(i) + ")");
    if (si.at(i, 0) != r.mul(r.mul(lam(-(ei + 1) / 2), bar(s.at(0, -i))), mu))
      fail("inverse(" + std::to_string(i) + ",0)");
  }
  if (r.mul(mu, si.at(0, 0)) != r.mul(bar(s.at(0, 0)), mu)) fail("mu*inverse(0,0)");
  for (int j : th.all()) {
    const HPoint target{j == 0 ? r.one() : r.zero(), 0};
    if (!delta_.contains(h_.minus(form_q(s.column(j)), target))) fail("q(column " + std::to_string(j) + ")");
  }
  cert.unitary = cert.violations.empty();
  return cert;
}

namespace {

// Calls f(u) for every u in R^d, in lexicographic order.
template <typename F>
void for_each_vector(std::size_t ring_size, std::size_t d, F&& f) {
  UVector u(d, 0);
  while (true) {
    f(u);
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (++u[k] < ring_size) break;
      u[k] = 0;
      if (k == 0) return;
    }
    if (d == 0) return;
  }
}

}  // namespace

bool FormsContext::is_unitary_bruteforce(const UMatrix& s, std::size_t cap) const {
  const FiniteRing& r = ring();
  double count = 1;
  for (std::size_t k = 0; k < dim(); ++k) count *= static_cast<double>(r.size());
  if (count > static_cast<double>(cap)) throw Error(ErrorCode::cap_exceeded, "module too large for brute force");
  std::vector<UVector> us, images;
  for_each_vector(r.size(), dim(), [&](const UVector& u) {
    us.push_back(u);
    images.push_back(apply(s, u));
  });
  {
    std::vector<UVector> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  for (std::size_t a = 0; a < us.size(); ++a) {
    if (!delta_.contains(h_.minus(form_q(images[a]), form_q(us[a])))) return false;
    for (std::size_t b = 0; b < us.size(); ++b)
      if (form_b(images[a], images[b]) != form_b(us[a], us[b])) return false;
  }
  return true;
}

bool FormsContext::preserves_form(const UMatrix& s) const {
  const Theta th = theta();
  std::vector<UVector> cols;
  for (int j : th.all()) cols.push_back(s.column(j));
  const auto labels = th.all();
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = 0; b < labels.size(); ++b)
      if (form_b(cols[a], cols[b]) != form_b(basis(labels[a]), basis(labels[b]))) return false;
  return true;
}

// ---------------------------------------------------------------------------

void FormsContext::check_short_indices(int i, int j) const {
  const Theta th = theta();
  if (i == 0 || j == 0 || !th.valid(i) || !th.valid(j) || i == j || i == -j)
    throw Error(ErrorCode::bad_indices, "short root needs i, j in Theta_hb with i != +-j, got (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
}

UMatrix FormsContext::T_short(int i, int j, Elem x) const {
  check_short_indices(i, j);
  const FiniteRing& r = ring();
  UMatrix m = identity();
  const int ei = Theta::eps(i), ej = Theta::eps(j);
  m.at(i, j) = r.add(m.at(i, j), x);
  const Elem c = r.mul(r.mul(lam((ej - 1) / 2), bar(x)), lam((1 - ei) / 2));
  m.at(-j, -i) = r.sub(m.at(-j, -i), c);
  return m;
}

UMatrix FormsContext::T_extra_raw(int i, HPoint a) const {
  const Theta th = theta();
  if (i == 0 || !th.valid(i)) throw Error(ErrorCode::bad_indices, "extra short root needs i in Theta_hb");
  const FiniteRing& r = ring();
  const int ei = Theta::eps(i);
  UMatrix m = identity();
  m.at(0, -i) = r.add(m.at(0, -i), a.x);
  m.at(i, 0) = r.sub(m.at(i, 0), r.mul(r.mul(lam(-(1 + ei) / 2), bar(a.x)), q_->mu()));
  m.at(i, -i) = r.add(m.at(i, -i), a.y);
  return m;
}

UMatrix FormsContext::T_extra(int i, HPoint a) const {
  if (i == 0 || !theta().valid(i)) throw Error(ErrorCode::bad_indices, "extra short root needs i in Theta_hb");
  if (!delta(-Theta::eps(i)).contains(a))
    throw Error(ErrorCode::point_not_in_parameter, "(" + std::to_string(a.x) + "," + std::to_string(a.y) +
                                                       ") is not in the parameter for index " + std::to_string(i));
  return T_extra_raw(i, a);
}

UMatrix FormsContext::P(int i, int j) const {
  const Elem one = ring().one();
  return multiply(multiply(T_short(i, j, one), T_short(j, i, ring().neg(one))), T_short(i, j, one));
}

UMatrix FormsContext::P_explicit(int i, int j) const {
  check_short_indices(i, j);
  const FiniteRing& r = ring();
  const int ei = Theta::eps(i), ej = Theta::eps(j);
  UMatrix m = identity();
  for (int k : {i, j, -i, -j}) m.at(k, k) = 0;
  m.at(i, j) = r.one();
  m.at(j, i) = r.neg(r.one());
  m.at(-i, -j) = lam((ei - ej) / 2);
  m.at(-j, -i) = r.neg(lam((ej - ei) / 2));
  return m;
}

std::vector<UMatrix> FormsContext::elementary_generators() const {
  std::vector<UMatrix> out;
  MatrixSet seen;
  const UMatrix id = identity();
  auto add = [&](UMatrix m) {
    if (m != id && seen.insert(m).second) out.push_back(std::move(m));
  };
  const Theta th = theta();
  for (int i : th.hb())
    for (int j : th.hb()) {
      if (i == j || i == -j) continue;
      for (Elem x = 1; x < ring().size(); ++x) add(T_short(i, j, x));
    }
  for (int i : th.hb())
    for (const HPoint& a : delta(-Theta::eps(i)).points()) add(T_extra(i, a));
  return out;
}

// ---------------------------------------------------------------------------

EvenMatrix even_identity(const FiniteRing& r, int m) {
  EvenMatrix a(m);
  for (int i = 1; i <= m; ++i) {
    a.at(i, i) = r.one();
    a.at(-i, -i) = r.one();
  }
  return a;
}

EvenMatrix even_multiply(const FiniteRing& r, const EvenMatrix& a, const EvenMatrix& b) {
  EvenMatrix c(a.m);
  const std::size_t d = static_cast<std::size_t>(2 * a.m);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j)
        c.e[i * d + j] = r.add(c.e[i * d + j], r.mul(a.e[i * d + k], b.e[k * d + j]));
  return c;
}

EvenMatrix even_short(const FormsContext& ctx, int m, int i, int j, Elem x) {
  if (i == 0 || j == 0 || std::abs(i) > m || std::abs(j) > m || i == j || i == -j)
    throw Error(ErrorCode::bad_indices, "bad even short root indices");
  const FiniteRing& r = ctx.ring();
  EvenMatrix a = even_identity(r, m);
  const int ei = Theta::eps(i), ej = Theta::eps(j);
  a.at(i, j) = r.add(a.at(i, j), x);
  a.at(-j, -i) = r.sub(a.at(-j, -i), r.mul(r.mul(ctx.lam((ej - 1) / 2), ctx.bar(x)), ctx.lam((1 - ei) / 2)));
  return a;
}

EvenMatrix even_long(const FormsContext& ctx, int m, int i, Elem y) {
  if (i == 0 || std::abs(i) > m) throw Error(ErrorCode::bad_indices, "bad even long root index");
  if (!ctx.delta(-Theta::eps(i)).contains({0, y}))
    throw Error(ErrorCode::point_not_in_parameter, "long root value outside the form parameter");
  const FiniteRing& r = ctx.ring();
  EvenMatrix a = even_identity(r, m);
  a.at(i, -i) = r.add(a.at(i, -i), y);
  return a;
}

UMatrix embed_even(const FormsContext& ctx, const EvenMatrix& tau) {
  if (tau.m < 1 || tau.m > ctx.n()) throw Error(ErrorCode::size_mismatch, "even block larger than n");
  UMatrix out = ctx.identity();
  for (int i = -tau.m; i <= tau.m; ++i)
    for (int j = -tau.m; j <= tau.m; ++j)
      if (i != 0 && j != 0) out.at(i, j) = tau.at(i, j);
  return out;
}

UMatrix embed_odd(const FormsContext& ctx, const UMatrix& sigma) {
  if (sigma.n < 1 || sigma.n > ctx.n()) throw Error(ErrorCode::size_mismatch, "odd block larger than n");
  const int l = ctx.n() - sigma.n;
  auto shift = [l](int i) { return i == 0 ? 0 : (i > 0 ? i + l : i - l); };
  UMatrix out = ctx.identity();
  for (int i = -sigma.n; i <= sigma.n; ++i)
    for (int j = -sigma.n; j <= sigma.n; ++j) out.at(shift(i), shift(j)) = sigma.at(i, j);
  return out;
}

// ---------------------------------------------------------------------------

ClassicalKind parse_classical_kind(std::string_view name) {
  if (name == "GL-odd" || name == "gl_odd") return ClassicalKind::gl_odd;
  if (name == "O-odd" || name == "o_odd") return ClassicalKind::o_odd;
  if (name == "Sp-odd" || name == "sp_odd") return ClassicalKind::sp_odd;
  if (name == "even-as-odd" || name == "even_as_odd") return ClassicalKind::even_as_odd;
  throw Error(ErrorCode::config_invalid, "unknown classical instance '" + std::string(name) + "'");
}

FormsContext classical_instance(ClassicalKind kind, const RingSpec& base, int n, const json& params) {
  if (kind == ClassicalKind::gl_odd) {
    auto ring = build_ring(RingSpec::product_with_opposite(base));
    auto q = make_odd_quadruple(ring, standard_involution(ring, StandardInvolution::swap), ring->one(), ring->one());
    Heisenberg h(q);
    return FormsContext(n, q, delta_max(h));
  }
  auto ring = build_ring(base);
  const FiniteRing& r = *ring;
  if (kind != ClassicalKind::even_as_odd && !r.is_commutative())
    throw Error(ErrorCode::incompatible_base, "orthogonal and symplectic instances need a commutative ring");
  if (kind == ClassicalKind::o_odd) {
    auto q = make_odd_quadruple(ring, standard_involution(ring, StandardInvolution::identity), r.one(),
                                r.add(r.one(), r.one()));
    PointSet delta(r.size());
    for (Elem x = 0; x < r.size(); ++x) delta.insert({x, r.neg(r.mul(x, x))});
    return FormsContext(n, q, std::move(delta));
  }
  if (kind == ClassicalKind::sp_odd) {
    auto q = make_odd_quadruple(ring, standard_involution(ring, StandardInvolution::identity), r.neg(r.one()),
                                r.zero());
    PointSet delta(r.size());
    for (Elem x = 0; x < r.size(); ++x)
      for (Elem y = 0; y < r.size(); ++y) delta.insert({x, y});
    return FormsContext(n, q, std::move(delta));
  }
  const std::string inv_name = params.value("involution", std::string(r.is_commutative() ? "identity" : "transpose"));
  auto bar = standard_involution(ring, parse_standard_involution(inv_name));
  const Elem lambda = params.contains("lambda") ? parse_element_ref(r, params["lambda"]) : r.one();
  const Elem mu = params.contains("mu") ? parse_element_ref(r, params["mu"]) : r.zero();
  auto q = make_odd_quadruple(ring, std::move(bar), lambda, mu);
  const json lam = params.value("Lambda", json("max"));
  PointSet delta(r.size());
  if (lam.is_string() && lam == "min") {
    for (Elem x = 0; x < r.size(); ++x) delta.insert({0, r.sub(x, r.mul(q->bar(x), lambda))});
  } else if (lam.is_string() && lam == "max") {
    for (Elem y = 0; y < r.size(); ++y)
      if (r.add(y, r.mul(q->bar(y), lambda)) == r.zero()) delta.insert({0, y});
  } else {
    const ElemSet ys = elem_set_from_json(r, lam);
    for (Elem y : ys.elements()) delta.insert({0, y});
  }
  return FormsContext(n, q, std::move(delta));
}

// ---------------------------------------------------------------------------

std::vector<UMatrix> generate_group(const FormsContext& ctx, const std::vector<UMatrix>& gens, std::size_t cap) {
  std::vector<UMatrix> steps;
  MatrixSet step_seen;
  for (const UMatrix& g : gens) {
    for (const UMatrix& s : {g, ctx.inv(g)})
      if (step_seen.insert(s).second) steps.push_back(s);
  }
  MatrixSet seen;
  std::vector<UMatrix> list{ctx.identity()};
  seen.insert(list.front());
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (const UMatrix& s : steps) {
      UMatrix c = ctx.multiply(list[i], s);
      if (seen.count(c)) continue;
      if (list.size() >= cap)
        throw Error(ErrorCode::closure_overflow, "group closure exceeds " + std::to_string(cap) + " elements");
      seen.insert(c);
      list.push_back(std::move(c));
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

namespace {

template <typename F>
void scan_matrices(const FormsContext& ctx, std::size_t scan_cap, F&& f) {
  const std::size_t d = ctx.dim();
  const std::size_t rs = ctx.ring().size();
  double count = 1;
  for (std::size_t k = 0; k < d * d; ++k) count *= static_cast<double>(rs);
  if (count > static_cast<double>(scan_cap))
    throw Error(ErrorCode::cap_exceeded, "matrix scan of " + std::to_string(count) + " exceeds cap");
  UMatrix m(ctx.n());
  while (true) {
    f(m);
    std::size_t k = d * d;
    bool done = true;
    while (k > 0) {
      --k;
      if (++m.e[k] < rs) {
        done = false;
        break;
      }
      m.e[k] = 0;
    }
    if (done) return;
  }
}

}  // namespace

std::vector<UMatrix> enumerate_unitary_group(const FormsContext& ctx, std::size_t scan_cap) {
  std::vector<UMatrix> out;
  const FiniteRing& r = ctx.ring();
  const Theta th = ctx.theta();
  scan_matrices(ctx, scan_cap, [&](const UMatrix& m) {
    if (!ctx.preserves_form(m)) return;
    for (int j : th.all()) {
      const HPoint target{j == 0 ? r.one() : r.zero(), 0};
      if (!ctx.delta().contains(ctx.heis().minus(ctx.form_q(m.column(j)), target))) return;
    }
    if (!ctx.inverse(m)) return;
    out.push_back(m);
  });
  return out;
}

std::vector<UMatrix> enumerate_invertible(const FormsContext& ctx, std::size_t scan_cap) {
  std::vector<UMatrix> out;
  scan_matrices(ctx, scan_cap, [&](const UMatrix& m) {
    if (ctx.inverse(m)) out.push_back(m);
  });
  return out;
}

json matrix_to_json(const FormsContext& ctx, const UMatrix& m, bool pretty) {
  json j;
  j["n"] = m.n;
  j["ring"] = ctx.ring().spec().digest();
  if (pretty) {
    json rows = json::array();
    const std::size_t d = m.dim();
    for (std::size_t r = 0; r < d; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < d; ++c) row.push_back(ctx.ring().render(m.e[r * d + c]));
      rows.push_back(row);
    }
    j["rows"] = rows;
  } else {
    j["entries"] = m.e;
  }
  return j;
}

UMatrix matrix_from_json(const FormsContext& ctx, const json& j) {
  const FiniteRing& r = ctx.ring();
  UMatrix m(ctx.n());
  const std::size_t d = ctx.dim();
  if (j.is_object() && j.contains("n") && j["n"].get<int>() != ctx.n())
    throw Error(ErrorCode::size_mismatch, "matrix n does not match the instance");
  if (j.is_object() && j.contains("entries")) {
    const json& e = j["entries"];
    if (!e.is_array() || e.size() != d * d) throw Error(ErrorCode::size_mismatch, "entries must have (2n+1)^2 items");
    for (std::size_t k = 0; k < d * d; ++k) m.e[k] = parse_element_ref(r, e[k]);
    return m;
  }
  const json& rows = j.is_object() ? j.at("rows") : j;
  if (!rows.is_array() || rows.size() != d) throw Error(ErrorCode::size_mismatch, "matrix must have 2n+1 rows");
  for (std::size_t a = 0; a < d; ++a) {
    if (!rows[a].is_array() || rows[a].size() != d) throw Error(ErrorCode::size_mismatch, "row of wrong length");
    for (std::size_t b = 0; b < d; ++b) m.e[a * d + b] = parse_element_ref(r, rows[a][b]);
  }
  return m;
}

}  // namespace oddform
