#pragma once

// The Heisenberg quasimodule on R^2, odd form parameters, relative form
// parameters (odd form ideals) and the ideals and sets derived from them.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "oddform/report.hpp"
#include "oddform/rings.hpp"

namespace oddform {

struct HPoint {
  Elem x = 0;
  Elem y = 0;
  auto operator<=>(const HPoint&) const = default;
};

enum class Orientation : int { plus = 1, minus = -1 };

inline Orientation orientation_of(int sign) { return sign >= 0 ? Orientation::plus : Orientation::minus; }

/// (R^2, (+), .) for one odd quadruple. The orientation -1 structure is the
/// same class built on the inverse quadruple.
class Heisenberg {
 public:
  explicit Heisenberg(std::shared_ptr<const OddQuadruple> q);

  const OddQuadruple& quadruple() const noexcept { return *q_; }
  const FiniteRing& ring() const noexcept { return *r_; }

  /// (x1+x2, y1+y2 - bar(x1) mu x2)
  HPoint plus(HPoint a, HPoint b) const {
    const FiniteRing& r = *r_;
    return {r.add(a.x, b.x), r.sub(r.add(a.y, b.y), r.mul(r.mul(bar(a.x), mu_), b.x))};
  }
  /// (-x, -y - bar(x) mu x)
  HPoint neg(HPoint a) const {
    const FiniteRing& r = *r_;
    return {r.neg(a.x), r.sub(r.neg(a.y), r.mul(r.mul(bar(a.x), mu_), a.x))};
  }
  HPoint minus(HPoint a, HPoint b) const { return plus(a, neg(b)); }
  /// (x r, bar(r) y r)
  HPoint scale(HPoint a, Elem s) const {
    const FiniteRing& r = *r_;
    return {r.mul(a.x, s), r.mul(r.mul(bar(s), a.y), s)};
  }
  /// bar(x) mu x + y + bar(y) lambda
  Elem trace(HPoint a) const {
    const FiniteRing& r = *r_;
    return r.add(r.add(r.mul(r.mul(bar(a.x), mu_), a.x), a.y), r.mul(bar(a.y), lambda_));
  }
  /// a (+) b (-) a (-) b
  HPoint commutator(HPoint a, HPoint b) const { return minus(minus(plus(a, b), a), b); }
  /// g (+) a (-) g
  HPoint conjugate(HPoint g, HPoint a) const { return minus(plus(g, a), g); }
  /// n-fold sum (n may be negative).
  HPoint times(long long n, HPoint a) const;

 private:
  Elem bar(Elem x) const { return bar_[x]; }

  std::shared_ptr<const OddQuadruple> q_;
  const FiniteRing* r_;
  const Elem* bar_;
  Elem lambda_, mu_;
};

/// Bitset-backed subset of 0..universe-1 that also keeps its members.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : universe_(universe), bits_((universe + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(std::uint32_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
  bool insert(std::uint32_t i) {
    std::uint64_t& w = bits_[i >> 6];
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (w & m) return false;
    w |= m;
    members_.push_back(i);
    sorted_ = false;
    return true;
  }
  /// Members in ascending order.
  const std::vector<std::uint32_t>& members() const;
  const std::vector<std::uint64_t>& bits() const noexcept { return bits_; }
  bool subset_of(const IndexSet& other) const;
  bool operator==(const IndexSet& other) const { return universe_ == other.universe_ && bits_ == other.bits_; }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> bits_;
  mutable std::vector<std::uint32_t> members_;
  mutable bool sorted_ = true;
};

/// Subset of R.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(std::size_t ring_size) : set_(ring_size) {}
  static ElemSet all(std::size_t ring_size);

  std::size_t size() const noexcept { return set_.size(); }
  bool contains(Elem x) const { return set_.contains(x); }
  bool insert(Elem x) { return set_.insert(x); }
  const std::vector<Elem>& elements() const { return set_.members(); }
  bool subset_of(const ElemSet& o) const { return set_.subset_of(o.set_); }
  bool operator==(const ElemSet& o) const { return set_ == o.set_; }
  std::size_t ring_size() const noexcept { return set_.universe(); }
  const IndexSet& raw() const noexcept { return set_; }
  json to_json() const;

 private:
  IndexSet set_;
};

/// Subset of R^2, canonically ordered by (x, y).
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t ring_size) : n_(ring_size), set_(ring_size * ring_size) {}

  std::size_t size() const noexcept { return set_.size(); }
  bool contains(HPoint p) const { return set_.contains(code(p)); }
  bool insert(HPoint p) { return set_.insert(code(p)); }
  std::vector<HPoint> points() const;
  bool subset_of(const PointSet& o) const { return set_.subset_of(o.set_); }
  bool operator==(const PointSet& o) const { return set_ == o.set_; }
  std::size_t ring_size() const noexcept { return n_; }
  const IndexSet& raw() const noexcept { return set_; }
  /// Sorted array of [x, y] index pairs.
  json to_json() const;
  /// First coordinates {x | (x, y) in set}.
  ElemSet first_coordinates() const;
  /// {y | (0, y) in set}.
  ElemSet zero_fiber() const;

 private:
  std::uint32_t code(HPoint p) const { return static_cast<std::uint32_t>(p.x * n_ + p.y); }
  std::size_t n_ = 0;
  IndexSet set_;
};

PointSet point_set_from_json(const FiniteRing& ring, const json& j);
ElemSet elem_set_from_json(const FiniteRing& ring, const json& j);

/// Default bound on the number of parameters an enumeration may return.
constexpr std::size_t kDefaultEnumerationCap = 20000;

PointSet delta_min(const Heisenberg& h);
PointSet delta_max(const Heisenberg& h);

/// Subgroup of (R^2, (+)) generated by `gens`.
PointSet close_subgroup(const Heisenberg& h, const std::vector<HPoint>& gens);
/// Least R-subquasimodule containing `gens`. Because (a (+) b).r = a.r (+) b.r,
/// this is the subgroup generated by {g.r}.
PointSet close_subquasimodule(const Heisenberg& h, const std::vector<HPoint>& gens);
/// Exact test: contains 0, closed under (+), (-) and .r for every r.
bool is_subgroup(const Heisenberg& h, const PointSet& s);
bool is_subquasimodule(const Heisenberg& h, const PointSet& s);
/// g (+) a (-) g in `sub` for all g in `ambient`, a in `sub`.
bool is_normal_in(const Heisenberg& h, const PointSet& sub, const PointSet& ambient);
/// A small generating set of the subgroup `s` (which must be a subgroup).
std::vector<HPoint> subgroup_generators(const Heisenberg& h, const PointSet& s);

/// Every subquasimodule P with lower <= P <= upper, where lower and upper are
/// themselves subquasimodules. Sorted by size, then by members.
std::vector<PointSet> enumerate_between(const Heisenberg& h, const PointSet& lower, const PointSet& upper,
                                        std::size_t cap = kDefaultEnumerationCap);

class FormParameter {
 public:
  /// Throws Error(certification_failed) listing the violated invariant.
  static FormParameter certify(const Heisenberg& h, PointSet elements);
  const PointSet& elements() const noexcept { return elements_; }

 private:
  explicit FormParameter(PointSet s) : elements_(std::move(s)) {}
  PointSet elements_;
};

std::vector<FormParameter> enumerate_form_parameters(const Heisenberg& h,
                                                     std::size_t cap = kDefaultEnumerationCap);

/// {(x, y) | (x, bar(y)) in delta}; a form parameter for the inverse
/// quadruple whenever delta is one for q.
PointSet inverse_parameter(const OddQuadruple& q, const PointSet& delta);

/// Additive subgroup of R generated by `gens`.
ElemSet additive_closure(const FiniteRing& r, const std::vector<Elem>& gens);
/// Two-sided ideal generated by `gens`.
ElemSet ideal_generated(const FiniteRing& r, const std::vector<Elem>& gens);
/// Two-sided ideal generated by Y and bar(Y).
ElemSet involution_invariant_ideal(const OddQuadruple& q, const std::vector<Elem>& gens);
bool is_two_sided_ideal(const FiniteRing& r, const ElemSet& s);
bool is_right_ideal(const FiniteRing& r, const ElemSet& s);
bool is_left_ideal(const FiniteRing& r, const ElemSet& s);
bool is_additive_subgroup(const FiniteRing& r, const ElemSet& s);

/// {x | bar(J(delta)) mu x subset of I}.
ElemSet i_tilde(const OddQuadruple& q, const PointSet& delta, const ElemSet& ideal);
PointSet omega_min(const Heisenberg& h, const PointSet& delta, const ElemSet& ideal);
PointSet omega_max(const Heisenberg& h, const PointSet& delta, const ElemSet& ideal);
std::vector<PointSet> enumerate_relative_form_parameters(const Heisenberg& h, const PointSet& delta,
                                                         const ElemSet& ideal,
                                                         std::size_t cap = kDefaultEnumerationCap);

struct DerivedSets {
  ElemSet j_delta;
  ElemSet i_tilde;
  ElemSet i0;
  ElemSet i_tilde0;
  ElemSet j_omega;
  ElemSet lambda_delta;
  ElemSet gamma_omega;
  json to_json() const;
};

DerivedSets derived_sets(const OddQuadruple& q, const PointSet& delta, const ElemSet& ideal, const PointSet& omega);

class OddFormIdeal {
 public:
  /// Checks: I an involution invariant two-sided ideal; omega_min <= Omega <=
  /// omega_max; Omega an R-subquasimodule normal in delta. Throws
  /// Error(certification_failed).
  static OddFormIdeal certify(const Heisenberg& h, const PointSet& delta, ElemSet ideal, PointSet omega);
  const ElemSet& ideal() const noexcept { return ideal_; }
  const PointSet& omega() const noexcept { return omega_; }
  json to_json() const;

 private:
  OddFormIdeal(ElemSet i, PointSet o) : ideal_(std::move(i)), omega_(std::move(o)) {}
  ElemSet ideal_;
  PointSet omega_;
};

/// Ideal defined by a set of ring elements, with Omega = omega_min.
OddFormIdeal defined_ideal(const Heisenberg& h, const PointSet& delta, const std::vector<Elem>& y);

struct PointDefinedIdeal {
  OddFormIdeal ideal;
  /// Whether omega_min (+) <Z.R> was already a subquasimodule before closing.
  bool span_was_closed;
};

/// Ideal defined by a set of points of delta; Omega is the full closure of
/// omega_min and Z.R.
PointDefinedIdeal defined_ideal_from_points(const Heisenberg& h, const PointSet& delta,
                                            const std::vector<HPoint>& z);

/// Group and quasimodule identities of the Heisenberg structure, the trace
/// homomorphism, and the behaviour of delta under inversion, as individual
/// reports. Exhaustive up to `exhaustive_points` pairs, sampled above.
std::vector<CheckReport> verify_heisenberg_identities(const Heisenberg& h, const Heisenberg& h_inv,
                                                      const PointSet& delta, std::uint64_t seed = 1,
                                                      std::size_t samples = 20000);

}  // namespace oddform
