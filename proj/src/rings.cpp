#include "oddform/rings.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace oddform {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string kind_name(RingSpec::Kind k) {
  switch (k) {
    case RingSpec::Kind::integers_mod: return "integers_mod";
    case RingSpec::Kind::prime_field: return "prime_field";
    case RingSpec::Kind::matrix: return "matrix";
    case RingSpec::Kind::product_with_opposite: return "product_with_opposite";
  }
  return "?";
}

}  // namespace

RingSpec RingSpec::integers_mod(std::uint32_t m) {
  RingSpec s;
  s.kind = Kind::integers_mod;
  s.modulus = m;
  return s;
}

RingSpec RingSpec::prime_field(std::uint32_t p) {
  RingSpec s;
  s.kind = Kind::prime_field;
  s.modulus = p;
  return s;
}

RingSpec RingSpec::matrix(std::size_t k, RingSpec inner) {
  RingSpec s;
  s.kind = Kind::matrix;
  s.dim = k;
  s.modulus = 0;
  s.inner = std::make_shared<const RingSpec>(std::move(inner));
  return s;
}

RingSpec RingSpec::product_with_opposite(RingSpec inner) {
  RingSpec s;
  s.kind = Kind::product_with_opposite;
  s.modulus = 0;
  s.inner = std::make_shared<const RingSpec>(std::move(inner));
  return s;
}

int RingSpec::depth() const {
  if (kind == Kind::integers_mod || kind == Kind::prime_field) return 0;
  return inner ? 1 + inner->depth() : 1;
}

std::uint32_t RingSpec::base_modulus() const {
  if (kind == Kind::integers_mod || kind == Kind::prime_field) return modulus;
  return inner->base_modulus();
}

void RingSpec::validate() const {
  switch (kind) {
    case Kind::integers_mod:
      if (modulus < 2) throw Error(ErrorCode::spec_invalid, "modulus must be >= 2");
      return;
    case Kind::prime_field:
      if (!is_prime(modulus))
        throw Error(ErrorCode::spec_invalid, "p = " + std::to_string(modulus) + " is not prime");
      return;
    case Kind::matrix:
      if (dim < 1) throw Error(ErrorCode::spec_invalid, "matrix dimension must be >= 1");
      [[fallthrough]];
    case Kind::product_with_opposite:
      if (!inner) throw Error(ErrorCode::spec_invalid, kind_name(kind) + " needs an inner ring");
      if (depth() > 2) throw Error(ErrorCode::spec_invalid, "ring spec nesting depth exceeds 2");
      inner->validate();
      return;
  }
}

json RingSpec::to_json() const {
  switch (kind) {
    case Kind::integers_mod: return {{"kind", "integers_mod"}, {"m", modulus}};
    case Kind::prime_field: return {{"kind", "prime_field"}, {"p", modulus}};
    case Kind::matrix: return {{"kind", "matrix"}, {"dim", dim}, {"inner", inner->to_json()}};
    case Kind::product_with_opposite:
      return {{"kind", "product_with_opposite"}, {"inner", inner->to_json()}};
  }
  return {};
}

RingSpec RingSpec::from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorCode::spec_invalid, "ring spec must be an object with a string 'kind'");
  const std::string kind = j["kind"];
  auto number = [&](const char* key) -> std::uint32_t {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
      throw Error(ErrorCode::spec_invalid, std::string("ring spec needs non-negative integer '") + key + "'");
    return j[key].get<std::uint32_t>();
  };
  RingSpec s;
  if (kind == "integers_mod" || kind == "zmod") {
    s = integers_mod(number("m"));
  } else if (kind == "prime_field") {
    s = prime_field(number("p"));
  } else if (kind == "matrix") {
    if (!j.contains("inner")) throw Error(ErrorCode::spec_invalid, "matrix ring needs 'inner'");
    s = matrix(number("dim"), from_json(j["inner"]));
  } else if (kind == "product_with_opposite" || kind == "product") {
    if (!j.contains("inner")) throw Error(ErrorCode::spec_invalid, "product ring needs 'inner'");
    s = product_with_opposite(from_json(j["inner"]));
  } else {
    throw Error(ErrorCode::spec_invalid, "unknown ring kind '" + kind + "'");
  }
  s.validate();
  return s;
}

std::string RingSpec::digest() const {
  switch (kind) {
    case Kind::integers_mod: return "Z" + std::to_string(modulus);
    case Kind::prime_field: return "F" + std::to_string(modulus);
    case Kind::matrix: return "M" + std::to_string(dim) + "(" + inner->digest() + ")";
    case Kind::product_with_opposite: {
      const std::string in = inner->digest();
      return in + "x" + in + "op";
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------

Elem FiniteRing::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * size_ + b];
  return add_structural(a, b);
}

Elem FiniteRing::mul(Elem a, Elem b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * size_ + b];
  return mul_structural(a, b);
}

Elem FiniteRing::times(long long n, Elem a) const {
  Elem base = n < 0 ? neg(a) : a;
  unsigned long long k = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  Elem acc = zero();
  while (k) {
    if (k & 1) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

std::vector<Elem> FiniteRing::components(Elem x) const {
  std::vector<Elem> out;
  if (!inner_) return {x};
  const std::size_t base = inner_->size();
  const std::size_t count = spec_.kind == RingSpec::Kind::matrix ? spec_.dim * spec_.dim : 2;
  out.assign(count, 0);
  for (std::size_t i = count; i-- > 0;) {
    out[i] = static_cast<Elem>(x % base);
    x = static_cast<Elem>(x / base);
  }
  return out;
}

Elem FiniteRing::compose(std::span<const Elem> digits) const {
  if (!inner_) return digits[0];
  std::size_t acc = 0;
  for (Elem d : digits) acc = acc * inner_->size() + d;
  return static_cast<Elem>(acc);
}

Elem FiniteRing::add_structural(Elem a, Elem b) const {
  if (!inner_) return static_cast<Elem>((static_cast<std::uint64_t>(a) + b) % spec_.modulus);
  auto da = components(a);
  auto db = components(b);
  for (std::size_t i = 0; i < da.size(); ++i) da[i] = inner_->add(da[i], db[i]);
  return compose(da);
}

Elem FiniteRing::mul_structural(Elem a, Elem b) const {
  if (!inner_) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % spec_.modulus);
  const auto da = components(a);
  const auto db = components(b);
  if (spec_.kind == RingSpec::Kind::product_with_opposite) {
    const Elem out[2] = {inner_->mul(da[0], db[0]), inner_->mul(db[1], da[1])};
    return compose(out);
  }
  const std::size_t k = spec_.dim;
  std::vector<Elem> out(k * k, inner_->zero());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Elem acc = inner_->zero();
      for (std::size_t l = 0; l < k; ++l) acc = inner_->add(acc, inner_->mul(da[i * k + l], db[l * k + j]));
      out[i * k + j] = acc;
    }
  return compose(out);
}

bool FiniteRing::is_unit(Elem x) const { return inverse(x).has_value(); }

std::vector<Elem> FiniteRing::left_inverses(Elem x) const {
  std::vector<Elem> out;
  for (Elem y = 0; y < size_; ++y)
    if (mul(y, x) == one_) out.push_back(y);
  return out;
}

std::optional<Elem> FiniteRing::inverse(Elem x) const {
  for (Elem y = 0; y < size_; ++y)
    if (mul(y, x) == one_ && mul(x, y) == one_) return y;
  return std::nullopt;
}

std::optional<Elem> FiniteRing::from_rep(std::span<const std::uint32_t> block) const {
  if (block.size() != rep_dim_ * rep_dim_) return std::nullopt;
  if (!inner_) {
    if (block[0] >= spec_.modulus) return std::nullopt;
    return block[0];
  }
  const std::size_t d = inner_->rep_dim();
  std::vector<std::uint32_t> sub(d * d);
  auto extract = [&](std::size_t br, std::size_t bc, bool transpose) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        const std::uint32_t v = block[(br * d + r) * rep_dim_ + bc * d + c];
        sub[transpose ? c * d + r : r * d + c] = v;
      }
  };
  std::vector<Elem> digits;
  if (spec_.kind == RingSpec::Kind::product_with_opposite) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (block[r * rep_dim_ + d + c] != 0 || block[(d + r) * rep_dim_ + c] != 0) return std::nullopt;
    extract(0, 0, false);
    auto a = inner_->from_rep(sub);
    extract(1, 1, true);
    auto b = inner_->from_rep(sub);
    if (!a || !b) return std::nullopt;
    digits = {*a, *b};
  } else {
    const std::size_t k = spec_.dim;
    digits.resize(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        extract(i, j, false);
        auto e = inner_->from_rep(sub);
        if (!e) return std::nullopt;
        digits[i * k + j] = *e;
      }
  }
  return compose(digits);
}

json FiniteRing::render(Elem x) const {
  if (!inner_) return x;
  const auto digits = components(x);
  json out = json::array();
  for (Elem d : digits) out.push_back(inner_->render(d));
  return out;
}

Elem FiniteRing::parse_rendered(const json& j) const {
  if (!inner_) {
    if (!j.is_number_integer()) throw Error(ErrorCode::config_invalid, "expected an integer residue");
    const long long v = j.get<long long>();
    const long long m = spec_.modulus;
    return static_cast<Elem>(((v % m) + m) % m);
  }
  const std::size_t count = spec_.kind == RingSpec::Kind::matrix ? spec_.dim * spec_.dim : 2;
  if (!j.is_array() || j.size() != count)
    throw Error(ErrorCode::config_invalid, "rendered element has wrong shape: " + j.dump());
  std::vector<Elem> digits;
  for (const auto& d : j) digits.push_back(inner_->parse_rendered(d));
  return compose(digits);
}

Elem FiniteRing::parse(const json& j) const {
  if (j.is_number_integer()) {
    const long long v = j.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= size_)
      throw Error(ErrorCode::config_invalid, "element index out of range: " + j.dump());
    return static_cast<Elem>(v);
  }
  if (j.is_array()) return parse_rendered(j);
  throw Error(ErrorCode::config_invalid, "cannot parse ring element: " + j.dump());
}

std::shared_ptr<const FiniteRing> build_ring(const RingSpec& spec, std::size_t cap) {
  spec.validate();
  auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
  ring->spec_ = spec;
  switch (spec.kind) {
    case RingSpec::Kind::integers_mod:
    case RingSpec::Kind::prime_field: {
      if (spec.modulus > cap) throw Error(ErrorCode::size_overflow, "carrier exceeds cap");
      ring->size_ = spec.modulus;
      ring->one_ = 1;
      ring->rep_dim_ = 1;
      ring->commutative_ = true;
      break;
    }
    case RingSpec::Kind::matrix:
    case RingSpec::Kind::product_with_opposite: {
      ring->inner_ = build_ring(*spec.inner, cap);
      const FiniteRing& in = *ring->inner_;
      const std::size_t count = spec.kind == RingSpec::Kind::matrix ? spec.dim * spec.dim : 2;
      std::size_t size = 1;
      for (std::size_t i = 0; i < count; ++i) {
        size *= in.size();
        if (size > cap) throw Error(ErrorCode::size_overflow, spec.digest() + " exceeds carrier cap " + std::to_string(cap));
      }
      ring->size_ = size;
      std::vector<Elem> one(count, in.zero());
      if (spec.kind == RingSpec::Kind::matrix) {
        for (std::size_t i = 0; i < spec.dim; ++i) one[i * spec.dim + i] = in.one();
        ring->rep_dim_ = spec.dim * in.rep_dim();
        ring->commutative_ = spec.dim == 1 && in.is_commutative();
      } else {
        one = {in.one(), in.one()};
        ring->rep_dim_ = 2 * in.rep_dim();
        ring->commutative_ = in.is_commutative();
      }
      ring->one_ = ring->compose(one);
      break;
    }
  }

  const std::size_t n = ring->size_;
  ring->neg_.resize(n);
  for (Elem x = 0; x < n; ++x) {
    if (!ring->inner_) {
      ring->neg_[x] = static_cast<Elem>((spec.modulus - x) % spec.modulus);
    } else {
      auto d = ring->components(x);
      for (auto& v : d) v = ring->inner_->neg(v);
      ring->neg_[x] = ring->compose(d);
    }
  }
  if (n <= FiniteRing::kTableLimit) {
    ring->add_table_.resize(n * n);
    ring->mul_table_.resize(n * n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        ring->add_table_[static_cast<std::size_t>(a) * n + b] = ring->add_structural(a, b);
        ring->mul_table_[static_cast<std::size_t>(a) * n + b] = ring->mul_structural(a, b);
      }
  }

  // Representation tables.
  const std::size_t d = ring->rep_dim_;
  ring->rep_.assign(n * d * d, 0);
  for (Elem x = 0; x < n; ++x) {
    std::uint32_t* out = ring->rep_.data() + static_cast<std::size_t>(x) * d * d;
    if (!ring->inner_) {
      out[0] = x;
      continue;
    }
    const FiniteRing& in = *ring->inner_;
    const std::size_t di = in.rep_dim();
    const auto digits = ring->components(x);
    auto place = [&](std::size_t br, std::size_t bc, Elem e, bool transpose) {
      const auto src = in.rep(e);
      for (std::size_t r = 0; r < di; ++r)
        for (std::size_t c = 0; c < di; ++c)
          out[(br * di + r) * d + bc * di + c] = transpose ? src[c * di + r] : src[r * di + c];
    };
    if (spec.kind == RingSpec::Kind::product_with_opposite) {
      place(0, 0, digits[0], false);
      place(1, 1, digits[1], true);
    } else {
      for (std::size_t i = 0; i < spec.dim; ++i)
        for (std::size_t j = 0; j < spec.dim; ++j) place(i, j, digits[i * spec.dim + j], false);
    }
  }
  return ring;
}

AxiomReport check_ring_axioms(const FiniteRing& r, std::size_t exhaustive_limit, std::size_t samples,
                              std::uint64_t seed) {
  AxiomReport rep;
  auto fail = [&](const std::string& what, Elem a, Elem b, Elem c) {
    rep.ok = false;
    if (rep.violations.size() < 16) {
      std::ostringstream os;
      os << what << " at (" << a << "," << b << "," << c << ")";
      rep.violations.push_back(os.str());
    }
  };
  if (r.one() == r.zero()) {
    rep.ok = false;
    rep.violations.push_back("1 == 0");
  }
  auto check = [&](Elem a, Elem b, Elem c) {
    ++rep.checked;
    if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c))) fail("add-assoc", a, b, c);
    if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c))) fail("mul-assoc", a, b, c);
    if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c))) fail("left-distrib", a, b, c);
    if (r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c))) fail("right-distrib", a, b, c);
  };
  auto check2 = [&](Elem a, Elem b) {
    if (r.add(a, b) != r.add(b, a)) fail("add-comm", a, b, 0);
  };
  auto check1 = [&](Elem a) {
    if (r.add(a, r.zero()) != a) fail("zero", a, 0, 0);
    if (r.add(a, r.neg(a)) != r.zero()) fail("neg", a, 0, 0);
    if (r.mul(a, r.one()) != a || r.mul(r.one(), a) != a) fail("one", a, 0, 0);
  };
  const std::size_t n = r.size();
  if (n <= exhaustive_limit) {
    for (Elem a = 0; a < n; ++a) {
      check1(a);
      for (Elem b = 0; b < n; ++b) {
        check2(a, b);
        for (Elem c = 0; c < n; ++c) check(a, b, c);
      }
    }
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
    for (std::size_t s = 0; s < samples; ++s) {
      const Elem a = pick(rng), b = pick(rng), c = pick(rng);
      check1(a);
      check2(a, b);
      check(a, b, c);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

Involution::Involution(std::shared_ptr<const FiniteRing> ring, std::vector<Elem> table)
    : ring_(std::move(ring)), table_(std::move(table)) {
  const FiniteRing& r = *ring_;
  const std::size_t n = r.size();
  if (table_.size() != n) throw Error(ErrorCode::invalid_involution, "table size does not match the carrier");
  std::vector<bool> seen(n, false);
  for (Elem x = 0; x < n; ++x) {
    if (table_[x] >= n) throw Error(ErrorCode::invalid_involution, "table entry out of range");
    if (seen[table_[x]]) throw Error(ErrorCode::invalid_involution, "not bijective");
    seen[table_[x]] = true;
  }
  if (table_[r.one()] != r.one()) throw Error(ErrorCode::invalid_involution, "bar(1) != 1");
  auto check_pair = [&](Elem x, Elem y) {
    if (table_[r.add(x, y)] != r.add(table_[x], table_[y]))
      throw Error(ErrorCode::invalid_involution, "not additive at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    if (table_[r.mul(x, y)] != r.mul(table_[y], table_[x]))
      throw Error(ErrorCode::invalid_involution,
                  "not anti-multiplicative at (" + std::to_string(x) + "," + std::to_string(y) + ")");
  };
  if (n <= FiniteRing::kTableLimit) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) check_pair(x, y);
  } else {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
    for (int s = 0; s < 200000; ++s) check_pair(pick(rng), pick(rng));
  }
}

StandardInvolution parse_standard_involution(std::string_view name) {
  if (name == "identity" || name == "id") return StandardInvolution::identity;
  if (name == "transpose") return StandardInvolution::transpose;
  if (name == "swap") return StandardInvolution::swap;
  throw Error(ErrorCode::config_invalid, "unknown involution '" + std::string(name) + "'");
}

Involution standard_involution(std::shared_ptr<const FiniteRing> ring, StandardInvolution which) {
  const FiniteRing& r = *ring;
  std::vector<Elem> table(r.size());
  switch (which) {
    case StandardInvolution::identity:
      if (!r.is_commutative())
        throw Error(ErrorCode::incompatible_ring, "identity involution needs a commutative ring");
      std::iota(table.begin(), table.end(), Elem{0});
      break;
    case StandardInvolution::transpose: {
      if (r.spec().kind != RingSpec::Kind::matrix || !r.inner()->is_commutative())
        throw Error(ErrorCode::incompatible_ring, "transpose needs a matrix ring over a commutative ring");
      const std::size_t k = r.spec().dim;
      for (Elem x = 0; x < r.size(); ++x) {
        const auto d = r.components(x);
        std::vector<Elem> t(k * k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) t[j * k + i] = d[i * k + j];
        table[x] = r.compose(t);
      }
      break;
    }
    case StandardInvolution::swap:
      if (r.spec().kind != RingSpec::Kind::product_with_opposite)
        throw Error(ErrorCode::incompatible_ring, "swap needs a product-with-opposite ring");
      for (Elem x = 0; x < r.size(); ++x) {
        const auto d = r.components(x);
        const Elem sw[2] = {d[1], d[0]};
        table[x] = r.compose(sw);
      }
      break;
  }
  return Involution(std::move(ring), std::move(table));
}

Elem OddQuadruple::lambda_pow(int e) const {
  switch (e) {
    case 0: return ring_->one();
    case 1: return lambda_;
    case -1: return bar_(lambda_);
    default: throw Error(ErrorCode::bad_indices, "lambda exponent outside {-1,0,1}");
  }
}

std::vector<QuadrupleViolation> check_odd_quadruple(const Involution& bar, Elem lambda, Elem mu) {
  const FiniteRing& r = bar.ring();
  std::vector<QuadrupleViolation> out;
  if (lambda >= r.size() || mu >= r.size()) {
    out.push_back({"element-range", json{{"lambda", lambda}, {"mu", mu}}});
    return out;
  }
  const Elem lambda_bar = bar(lambda);
  for (Elem x = 0; x < r.size(); ++x) {
    if (bar(bar(x)) != r.mul(r.mul(lambda, x), lambda_bar)) {
      out.push_back({"symmetry", json{{"x", r.render(x)}}});
      break;
    }
  }
  if (r.mul(lambda_bar, lambda) != r.one() || r.mul(lambda, lambda_bar) != r.one())
    out.push_back({"lambda-inverse", json{{"lambda", r.render(lambda)}}});
  if (mu != r.mul(bar(mu), lambda)) out.push_back({"mu-constraint", json{{"mu", r.render(mu)}}});
  return out;
}

std::shared_ptr<const OddQuadruple> make_odd_quadruple(std::shared_ptr<const FiniteRing> ring, Involution bar,
                                                       Elem lambda, Elem mu) {
  const auto violations = check_odd_quadruple(bar, lambda, mu);
  if (!violations.empty()) {
    json detail = json::array();
    bool symmetry = false;
    for (const auto& v : violations) {
      detail.push_back({{"invariant", v.invariant}, {"witness", v.witness}});
      symmetry = symmetry || v.invariant != "mu-constraint";
    }
    throw Error(symmetry ? ErrorCode::not_a_symmetry : ErrorCode::mu_constraint_failed, detail.dump());
  }
  return std::shared_ptr<const OddQuadruple>(new OddQuadruple(std::move(ring), std::move(bar), lambda, mu));
}

std::shared_ptr<const OddQuadruple> inverse_quadruple(const OddQuadruple& q) {
  const FiniteRing& r = q.ring();
  const Elem lambda_bar = q.bar(q.lambda());
  std::vector<Elem> table(r.size());
  for (Elem x = 0; x < r.size(); ++x) table[x] = r.mul(r.mul(lambda_bar, q.bar(x)), q.lambda());
  Involution under(q.ring_ptr(), table);
  return make_odd_quadruple(q.ring_ptr(), std::move(under), table[q.lambda()], table[q.mu()]);
}

Elem parse_element_ref(const FiniteRing& ring, const json& j) {
  if (j.is_string()) {
    const std::string s = j;
    if (s == "zero") return ring.zero();
    if (s == "one") return ring.one();
    if (s == "minus_one") return ring.neg(ring.one());
    if (s == "two") return ring.add(ring.one(), ring.one());
    throw Error(ErrorCode::config_invalid, "unknown element name '" + s + "'");
  }
  return ring.parse(j);
}

}  // namespace oddform
