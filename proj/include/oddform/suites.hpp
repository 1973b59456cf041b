#pragma once

// The verification suites run by the CLI and the acceptance driver.

#include <cstdint>
#include <string>
#include <vector>

#include "oddform/report.hpp"
#include "oddform/unitary.hpp"

namespace oddform {

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Bound for group closures and enumerations.
  std::size_t cap = 200000;
  /// Random cases per sampled relation.
  std::size_t relation_samples = 2000;
  /// Random group elements when the group cannot be listed.
  std::size_t group_samples = 200;
  std::size_t reductions = 200;
  std::size_t column_pairs = 100;
};

struct GroupSample {
  std::vector<UMatrix> elements;
  /// The whole of U_(2n+1)(R, Delta).
  bool complete = false;
  std::string method;
};

/// Every unitary matrix when the matrix scan is small enough, else the
/// closure of the elementary generators up to `cap` (complete only if it
/// closes), else random products of generators.
GroupSample group_sample(const FormsContext& ctx, const SuiteOptions& opt);

/// All involution invariant two-sided ideals of R, sorted by size.
std::vector<ElemSet> invariant_ideals(const OddQuadruple& q);

/// The commutator q-column identities on `pairs` random (sigma, move) pairs,
/// sigma a random product of elementary generators. Needs n >= 2.
CheckReport verify_commutator_columns_sampled(const FormsContext& ctx, std::size_t pairs, std::uint64_t seed = 1);

std::vector<CheckReport> suite_quasimodule(const FormsContext& ctx, const SuiteOptions& opt);
std::vector<CheckReport> suite_relations(const FormsContext& ctx, const SuiteOptions& opt);
std::vector<CheckReport> suite_membership(const FormsContext& ctx, const SuiteOptions& opt);
std::vector<CheckReport> suite_congruence(const FormsContext& ctx, const SuiteOptions& opt);
std::vector<CheckReport> suite_action(const FormsContext& ctx, const SuiteOptions& opt);

/// One of "quasimodule", "relations", "membership", "congruence", "action",
/// "all". Throws Error(config_invalid) for other names.
std::vector<CheckReport> run_suite(const FormsContext& ctx, const std::string& suite, const SuiteOptions& opt);

}  // namespace oddform
