#pragma once

// Levels of E-normal subgroups, E-normality, the sandwich containments
// EU((R,Delta),(I,Omega)) <= H <= CU((R,Delta),(I,Omega)), and the
// constructive column reductions over finite rings.

#include <optional>
#include <string>
#include <vector>

#include "oddform/congruence.hpp"
#include "oddform/report.hpp"
#include "oddform/subgroup.hpp"
#include "oddform/unitary.hpp"

namespace oddform {

struct LevelResult {
  ElemSet ideal;
  PointSet omega;
  /// Set when (I, Omega) certified as an odd form ideal.
  std::optional<Level> level;
  std::string failure;
  /// For each x in I an (i, j) with T_ij(x) in H; for each point of Omega an
  /// i in Theta_- with T_i(x,y) in H.
  json witnesses = json::object();
  bool certified() const { return level.has_value(); }
  json to_json() const;
};

/// I = {x | T_ij(x) in H for some i, j}, Omega = {a in Delta | T_i(a) in H
/// for some i in Theta_-}. Throws Error(closure_overflow) when membership in
/// H is undecidable; a non-certifiable result is returned with `failure`.
LevelResult level_of(const SubgroupHandle& H);

struct NormalityResult {
  bool normal = false;
  std::size_t checked = 0;
  json witness = nullptr;
  json to_json() const;
};

/// g h g^-1 in H for every g in eu_gens and every generator h of H; exact,
/// since conjugation by g is a homomorphism.
NormalityResult is_E_normal(const SubgroupHandle& H, const std::vector<UMatrix>& eu_gens);

struct Containment {
  Verdict verdict = Verdict::truncated;
  std::size_t checked = 0;
  json witness = nullptr;
  std::string method;
  json to_json() const;
};

struct SandwichReport {
  LevelResult level;
  NormalityResult e_normal;
  Containment lower;  // EU((R,Delta),(I,Omega)) <= H
  Containment upper;  // H <= CU((R,Delta),(I,Omega))
  json to_json() const;
};

/// Extracts the level, then tests both containments. When H is not known to
/// be E-normal the lower containment is probed on up to `conj_cap`
/// conjugates of the preelementary generators and reported as truncated
/// unless a witness refutes it.
SandwichReport sandwich_check(const SubgroupHandle& H, std::size_t conj_cap = 4000);

// Column reductions.

/// Some v with sum v_i u_i = 1, or nullopt.
std::optional<std::vector<Elem>> left_unimodular_certificate(const FiniteRing& r, const std::vector<Elem>& u);
bool is_left_unimodular(const FiniteRing& r, const std::vector<Elem>& u);

/// For a unimodular column (u_1..u_(m+1)), the first x (in element order)
/// with (u_1 + x u_(m+1), u_2, .., u_m) unimodular. Throws
/// Error(no_shift_found).
Elem find_unimodular_shift(const FiniteRing& r, const std::vector<Elem>& u, int m);

struct ReductionFactor {
  std::string step;
  bool extra = false;
  int i = 0;
  int j = 0;
  Elem x = 0;
  HPoint a{};
  json to_json() const;
};

struct Reduction {
  UMatrix f;
  UMatrix result;  // f sigma
  std::vector<ReductionFactor> factors;  // f = factors.back() ... factors.front()
  bool certified = false;
  std::vector<std::string> notes;
  json to_json(const FormsContext& ctx) const;
};

/// Upper unitriangular (in the basis order e_1..e_n, e_0, e_-n..e_-1).
bool has_teu_shape(const FormsContext& ctx, const UMatrix& m);
/// Block form (A B C; 0 1 D; 0 0 E).
bool has_ueu_shape(const FormsContext& ctx, const UMatrix& m);

/// f in TEU with (f sigma)_11 left invertible. Needs n >= 2. Throws
/// Error(reduction_failed).
Reduction reduce_first_entry(const FormsContext& ctx, const UMatrix& sigma);
/// f in UEU whose product with sigma has first column upper part
/// (1,0,..,0) and second column upper part (0,1,0,..,0). Needs n >= 3.
Reduction reduce_two_columns(const FormsContext& ctx, const UMatrix& sigma);

/// Runs both reductions on `count` random products of `length` elementary
/// generators, checking certificates, factor shapes and unitarity.
std::vector<CheckReport> verify_reductions(const FormsContext& ctx, std::size_t count, std::size_t length,
                                           std::uint64_t seed = 1);

}  // namespace oddform
