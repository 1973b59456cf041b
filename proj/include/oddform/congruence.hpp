#pragma once

// Relative subgroups at a level (I, Omega): the principal congruence subgroup
// U((R,Delta),(I,Omega)), the normalizer U~, the full congruence subgroup CU,
// and the (pre)elementary subgroups of level (I, Omega).

#include <optional>
#include <string>
#include <vector>

#include "oddform/formparam.hpp"
#include "oddform/report.hpp"
#include "oddform/subgroup.hpp"
#include "oddform/unitary.hpp"

namespace oddform {

/// An odd form ideal of (R, Delta) together with the sets derived from it.
class Level {
 public:
  /// Certifies (I, Omega); throws Error(certification_failed).
  Level(const FormsContext& ctx, ElemSet ideal, PointSet omega);
  Level(const FormsContext& ctx, const OddFormIdeal& ideal);

  /// (R, Delta).
  static Level absolute(const FormsContext& ctx);
  /// ({0}, {(0,0)}).
  static Level trivial(const FormsContext& ctx);

  const FormsContext& context() const noexcept { return *ctx_; }
  const ElemSet& ideal() const noexcept { return ideal_; }
  /// Omega for sign +1, Omega^-1 for sign -1.
  const PointSet& omega(int sign = 1) const noexcept { return sign >= 0 ? omega_ : omega_inv_; }
  const PointSet& omega_min() const noexcept { return omega_min_; }
  const DerivedSets& sets() const noexcept { return sets_; }
  json to_json() const;

 private:
  const FormsContext* ctx_;
  ElemSet ideal_;
  PointSet omega_;
  PointSet omega_inv_;
  PointSet omega_min_;
  DerivedSets sets_;
};

Level level_from_json(const FormsContext& ctx, const json& j);

/// Coordinate predicates for the submodules M(R,Delta), M(I), M(I,Omega).
bool in_M_RDelta(const FormsContext& ctx, const UVector& u);
bool in_M_I(const Level& L, const UVector& u);
bool in_M_IOmega(const Level& L, const UVector& u);

struct Membership {
  bool member = false;
  std::vector<std::string> violations;
  json to_json() const;
};

/// Column criterion: sigma_hb = e_hb mod I, q(sigma_*j) in Omega for j in
/// Theta_hb, and (q(sigma_*0) (-) (1,0)).x in Omega for all x in J(Delta).
Membership in_principal(const Level& L, const UMatrix& sigma);
/// q(sigma u) (-) q(u) in Omega for every u in M(R,Delta), with the
/// hyperbolic condition. Throws Error(cap_exceeded) when |M| > cap.
bool in_principal_bruteforce(const Level& L, const UMatrix& sigma, std::size_t cap = 1u << 16);

struct TildeMembership {
  bool member = false;  // condition (2), the operative test
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  bool cond4 = false;
  bool agree() const { return cond1 == cond2 && cond2 == cond3 && cond3 == cond4; }
  json to_json() const;
};

/// Membership in U~ with all four equivalent conditions evaluated.
TildeMembership in_tilde(const Level& L, const UMatrix& sigma);
TildeMembership in_tilde(const Level& L, const UMatrix& sigma, const UMatrix& sigma_inv);
/// q(sigma u) = q(sigma^-1 u) = q(u) mod Omega for every u in M(I,Omega).
bool in_tilde_bruteforce(const Level& L, const UMatrix& sigma, std::size_t cap = 1u << 16);

struct CUMembership {
  bool member = false;
  bool in_tilde = false;
  /// Index into the generator list of the first g with [sigma, g] outside
  /// U((R,Delta),(I,Omega)).
  std::optional<std::size_t> witness;
  json to_json() const;
};

/// sigma in U~ and [sigma, g] in U(level) for every g in eu_gens. Because
/// U(level) is normalized by EU, [sigma, gh] = [sigma, g] . g[sigma, h]g^-1
/// reduces the condition on all of EU to a generating set.
CUMembership in_CU(const Level& L, const UMatrix& sigma, const std::vector<UMatrix>& eu_gens);

/// All nontrivial (I,Omega)-elementary short and extra short root matrices.
std::vector<UMatrix> eu_level_generators(const Level& L);

/// Normal closure of the preelementary generators under conjugation by
/// `conjugators`, as the generated subgroup. Truncates (and says so) past
/// `cap` elements.
SubgroupHandle eu_level_normal_closure(const Level& L, const std::vector<UMatrix>& conjugators,
                                       std::size_t cap = 200000);

/// q(u+v) against q(u) (+) q(v) (+) (0, b(u,v)) for u in M(I) or v in M(I):
/// the congruence mod omega_min and the explicit defect.
std::vector<CheckReport> verify_q_sum_defect(const Level& L, std::uint64_t seed = 1, std::size_t samples = 20000);

/// q(sigma u) (-) q(u) = (q(sigma_*0) (-) (1,0)).u_0 mod omega_min for every
/// sigma in `group` and u in M(I).
CheckReport verify_q_shift(const Level& L, const std::vector<UMatrix>& group, std::uint64_t seed = 1,
                           std::size_t samples = 20000);

/// tau sigma tau^-1 in U(level) for tau in U~(level), sigma in U(level),
/// over an enumerated group.
CheckReport verify_tilde_normalizes(const Level& L, const std::vector<UMatrix>& group);

/// Membership in U(I, omega_max) against the coordinate description, and
/// the resulting congruence sigma = e mod (I, I~, I0, I~0).
CheckReport verify_omega_max_level(const FormsContext& ctx, const ElemSet& ideal, const std::vector<UMatrix>& samples);

/// Identities between the two membership tests and their oracles, U <= U~,
/// EU <= U~, U <= CU on the given elements.
std::vector<CheckReport> verify_membership_chain(const Level& L, const std::vector<UMatrix>& elements,
                                                 bool with_oracles);

/// A move for the commutator identities of the column reduction.
struct RootMove {
  bool extra = false;
  int i = 1;
  int j = 2;
  Elem x = 0;     // short move
  HPoint a{};     // extra short move, in Delta^(-eps(i))
  json to_json() const;
};

/// Column-by-column q-value identities for tau = [sigma, T_ij(x)] or
/// rho = [sigma, T_i(y,z)]: the difference between q(tau_*k) and the
/// displayed right-hand side must be (0, w - bar(w) lambda) with w in J(sigma)
/// (J'(sigma) or J(sigma)+J'(sigma) for k = 0).
CheckReport verify_commutator_columns(const FormsContext& ctx, const UMatrix& sigma, const RootMove& move);

/// The ideal J(sigma) and the left ideal J'(sigma).
ElemSet j_sigma(const FormsContext& ctx, const UMatrix& sigma, const UMatrix& sigma_inv);
ElemSet j_prime_sigma(const FormsContext& ctx, const UMatrix& sigma, const UMatrix& sigma_inv);

/// Left ideal generated by `gens`.
ElemSet left_ideal_generated(const FiniteRing& r, const std::vector<Elem>& gens);

}  // namespace oddform
