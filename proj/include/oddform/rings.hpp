#pragma once

// Finite base rings given by operation tables, involutions with symmetry and
// odd quadruples (R, bar, lambda, mu).

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "oddform/error.hpp"

namespace oddform {

using json = nlohmann::json;

/// Ring elements are dense indices 0..size-1 into the carrier of a FiniteRing.
using Elem = std::uint32_t;

struct RingSpec {
  enum class Kind { integers_mod, prime_field, matrix, product_with_opposite };

  Kind kind = Kind::prime_field;
  std::uint32_t modulus = 2;  // m for Z/m, p for F_p
  std::size_t dim = 0;        // k for M_k(inner)
  std::shared_ptr<const RingSpec> inner;

  static RingSpec integers_mod(std::uint32_t m);
  static RingSpec prime_field(std::uint32_t p);
  static RingSpec matrix(std::size_t k, RingSpec inner);
  static RingSpec product_with_opposite(RingSpec inner);

  int depth() const;
  std::uint32_t base_modulus() const;
  /// Throws Error(spec_invalid) unless m >= 2, p prime, k >= 1, depth <= 2.
  void validate() const;

  json to_json() const;
  static RingSpec from_json(const json& j);
  /// Short canonical name, e.g. "M2(F2)" or "Z4xZ4op".
  std::string digest() const;
};

class FiniteRing {
 public:
  static constexpr std::size_t kDefaultCap = 65536;
  // Full add/mul tables are kept up to this carrier size; larger carriers
  // evaluate products structurally.
  static constexpr std::size_t kTableLimit = 1024;

  const RingSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return size_; }
  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return one_; }

  Elem add(Elem a, Elem b) const;
  Elem mul(Elem a, Elem b) const;
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  /// n-fold sum of a (n may be negative).
  Elem times(long long n, Elem a) const;

  bool is_commutative() const noexcept { return commutative_; }
  bool is_unit(Elem x) const;
  /// Exact, by exhaustive scan: all y with y*x = 1.
  std::vector<Elem> left_inverses(Elem x) const;
  std::optional<Elem> inverse(Elem x) const;

  /// Faithful representation R -> M_d(Z/m). Used for exact matrix inversion
  /// over R by elimination over Z/m.
  std::size_t rep_dim() const noexcept { return rep_dim_; }
  std::uint32_t rep_modulus() const noexcept { return spec_.base_modulus(); }
  std::span<const std::uint32_t> rep(Elem x) const {
    return {rep_.data() + static_cast<std::size_t>(x) * rep_dim_ * rep_dim_, rep_dim_ * rep_dim_};
  }
  /// Inverse of rep on its image; `block` is rep_dim x rep_dim row-major.
  std::optional<Elem> from_rep(std::span<const std::uint32_t> block) const;

  /// Canonical rendering: integers for Z/m and F_p, row-major integer lists
  /// for matrices, pairs for products.
  json render(Elem x) const;
  /// Accepts an element index or a rendered element (arrays).
  Elem parse(const json& j) const;
  Elem parse_rendered(const json& j) const;

  /// Digits of a composite element (matrix entries row-major, or the pair).
  std::vector<Elem> components(Elem x) const;
  Elem compose(std::span<const Elem> digits) const;
  const FiniteRing* inner() const noexcept { return inner_.get(); }

 private:
  friend std::shared_ptr<const FiniteRing> build_ring(const RingSpec& spec, std::size_t cap);
  FiniteRing() = default;
  Elem add_structural(Elem a, Elem b) const;
  Elem mul_structural(Elem a, Elem b) const;

  RingSpec spec_;
  std::size_t size_ = 0;
  Elem one_ = 0;
  std::shared_ptr<const FiniteRing> inner_;
  std::vector<Elem> add_table_;
  std::vector<Elem> mul_table_;
  std::vector<Elem> neg_;
  bool commutative_ = false;
  std::size_t rep_dim_ = 1;
  std::vector<std::uint32_t> rep_;
};

/// Builds and validates the ring described by `spec`. Element indices are
/// lexicographic over the construction (matrix entries row-major, most
/// significant first; pairs as first * |S| + second).
std::shared_ptr<const FiniteRing> build_ring(const RingSpec& spec,
                                             std::size_t cap = FiniteRing::kDefaultCap);

struct AxiomReport {
  bool ok = true;
  bool exhaustive = true;
  std::uint64_t checked = 0;
  std::vector<std::string> violations;
};

/// Ring axioms; exhaustive up to `exhaustive_limit` elements, sampled above.
AxiomReport check_ring_axioms(const FiniteRing& ring, std::size_t exhaustive_limit = 256,
                              std::size_t samples = 200000, std::uint64_t seed = 1);

class Involution {
 public:
  /// Validates additivity, anti-multiplicativity, bar(1) = 1 and bijectivity;
  /// throws Error(invalid_involution).
  Involution(std::shared_ptr<const FiniteRing> ring, std::vector<Elem> table);

  Elem operator()(Elem x) const { return table_[x]; }
  const std::vector<Elem>& table() const noexcept { return table_; }
  const FiniteRing& ring() const noexcept { return *ring_; }

 private:
  std::shared_ptr<const FiniteRing> ring_;
  std::vector<Elem> table_;
};

enum class StandardInvolution { identity, transpose, swap };

StandardInvolution parse_standard_involution(std::string_view name);
Involution standard_involution(std::shared_ptr<const FiniteRing> ring, StandardInvolution which);

struct QuadrupleViolation {
  std::string invariant;
  json witness;
};

class OddQuadruple {
 public:
  const FiniteRing& ring() const noexcept { return *ring_; }
  const std::shared_ptr<const FiniteRing>& ring_ptr() const noexcept { return ring_; }
  const Involution& involution() const noexcept { return bar_; }
  Elem bar(Elem x) const { return bar_(x); }
  Elem lambda() const noexcept { return lambda_; }
  Elem mu() const noexcept { return mu_; }
  /// lambda^e for e in {-1, 0, 1}; lambda^{-1} = bar(lambda).
  Elem lambda_pow(int e) const;

 private:
  friend std::shared_ptr<const OddQuadruple> make_odd_quadruple(std::shared_ptr<const FiniteRing>,
                                                                Involution, Elem, Elem);
  OddQuadruple(std::shared_ptr<const FiniteRing> ring, Involution bar, Elem lambda, Elem mu)
      : ring_(std::move(ring)), bar_(std::move(bar)), lambda_(lambda), mu_(mu) {}

  std::shared_ptr<const FiniteRing> ring_;
  Involution bar_;
  Elem lambda_;
  Elem mu_;
};

/// Every violated quadruple invariant; empty iff (ring, bar, lambda, mu) is an
/// odd quadruple.
std::vector<QuadrupleViolation> check_odd_quadruple(const Involution& bar, Elem lambda, Elem mu);

/// Throws Error(not_a_symmetry) or Error(mu_constraint_failed) with the
/// violation list in the message.
std::shared_ptr<const OddQuadruple> make_odd_quadruple(std::shared_ptr<const FiniteRing> ring,
                                                       Involution bar, Elem lambda, Elem mu);

/// (R, underbar, underbar(lambda), underbar(mu)) with
/// underbar(x) = bar(lambda) bar(x) lambda, the inverse map of bar.
std::shared_ptr<const OddQuadruple> inverse_quadruple(const OddQuadruple& q);

/// Named element references used by configs: "zero", "one", "minus_one",
/// "two", or anything FiniteRing::parse accepts.
Elem parse_element_ref(const FiniteRing& ring, const json& j);

}  // namespace oddform
