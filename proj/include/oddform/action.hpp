#pragma once

// The conjugation action (sigma, Omega) -> ^sigma Omega of U_(2n+1)(R,Delta)
// on the relative odd form parameters for a fixed ideal I.

#include <optional>
#include <string>
#include <vector>

#include "oddform/congruence.hpp"
#include "oddform/formparam.hpp"
#include "oddform/report.hpp"
#include "oddform/subgroup.hpp"
#include "oddform/unitary.hpp"

namespace oddform {

/// ^sigma Omega: the (+)-closure of {(q(sigma_*0) (-) (1,0)).x (+) (x,y) |
/// (x,y) in Omega} together with omega_min(I).
PointSet conj_form_parameter(const FormsContext& ctx, const UMatrix& sigma, const PointSet& omega,
                             const ElemSet& ideal);

/// The same set computed through the big Heisenberg quasimodule on M x R:
/// {q(sigma u) (+) (0,x) | u in M(I), q(u) (+) (0,x) in Omega}. Throws
/// Error(cap_exceeded) when |M(I)| |R| > cap.
PointSet conj_form_parameter_big(const FormsContext& ctx, const UMatrix& sigma, const PointSet& omega,
                                 const ElemSet& ideal, std::size_t cap = 1u << 20);

/// ROFP(I), canonically ordered.
struct ROFPLattice {
  ElemSet ideal;
  std::vector<PointSet> params;
  /// Position of `omega`, if it is in the lattice.
  std::optional<std::size_t> index_of(const PointSet& omega) const;
  json to_json() const;
};

ROFPLattice rofp_lattice(const FormsContext& ctx, const ElemSet& ideal, std::size_t cap = kDefaultEnumerationCap);

/// ^e Omega = Omega, ^(sigma tau) Omega = ^sigma(^tau Omega), ^(sigma^-1)
/// undoes ^sigma, inclusion is preserved, the extremes are fixed, each image
/// is a relative parameter, the big-quasimodule route agrees, and
/// sigma in U~ iff ^sigma Omega = Omega. `group` supplies the sigma, tau.
std::vector<CheckReport> verify_action_laws(const FormsContext& ctx, const ROFPLattice& lattice,
                                            const std::vector<UMatrix>& group, std::uint64_t seed = 1,
                                            std::size_t samples = 4000);

/// ^sigma U((R,Delta),(I,Omega)) = U((R,Delta),(I,^sigma Omega)). With an
/// enumerated `group` both sides are compared as sets; otherwise each
/// preelementary generator of the two levels is pushed across by sigma or
/// sigma^-1 and tested.
CheckReport conjugate_level_check(const FormsContext& ctx, const UMatrix& sigma, const Level& level,
                            const std::vector<UMatrix>* group = nullptr);

struct OrbitPartition {
  std::vector<std::vector<std::size_t>> blocks;
  struct Link {
    std::size_t from;
    std::size_t to;
    std::string witness;  // "witness:<k>" or "elementary:<k>"
  };
  std::vector<Link> links;
  /// "orbit" when the acting set was the whole group, else
  /// "reachable-closure".
  std::string label;
  json to_json(const ROFPLattice& lattice) const;
};

/// Blocks of ROFP(I) reachable from one another under the supplied
/// witnesses and, if requested, the elementary generators.
OrbitPartition orbits(const FormsContext& ctx, const ROFPLattice& lattice, const std::vector<UMatrix>& witnesses,
                      bool with_elementary = true, bool full_group = false);

/// The subgroup H of U_(2n+1)(M2(F2), Delta_max): matrices equal to e outside
/// row 0 whose middle entry is e or [[1,1],[0,1]]. Generated by the matrix
/// units in row 0 and the middle entry [[1,1],[0,1]].
SubgroupHandle m2f2_row_subgroup(const FormsContext& ctx);

struct ScenarioResult {
  bool passed = false;
  json report;
};

/// The M_2(F_2) transpose scenario: the five relative parameters for I = 0,
/// the action of the block swap sigma, its failure to normalize, the
/// subgroup H with its level and sandwich, and ^sigma tau outside H.
ScenarioResult run_m2f2_scenario(int n = 3);

}  // namespace oddform
