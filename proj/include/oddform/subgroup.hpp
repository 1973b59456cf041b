#pragma once

// A subgroup of U_(2n+1)(R, Delta), given by generators (closed up to a cap)
// or by a membership predicate together with a generating set.

#include <functional>
#include <string>
#include <vector>

#include "oddform/unitary.hpp"

namespace oddform {

class SubgroupHandle {
 public:
  using Predicate = std::function<bool(const UMatrix&)>;

  /// Closes `gens` by breadth-first multiplication; stops (truncated) once
  /// the closure would exceed `cap` elements.
  static SubgroupHandle from_generators(const FormsContext& ctx, std::vector<UMatrix> gens,
                                        std::size_t cap = 200000, std::string name = "generated");
  /// Membership by `pred`; `gens` must generate the same subgroup.
  static SubgroupHandle from_predicate(const FormsContext& ctx, std::string name, Predicate pred,
                                       std::vector<UMatrix> gens);

  const FormsContext& context() const noexcept { return *ctx_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<UMatrix>& generators() const noexcept { return gens_; }
  bool has_predicate() const noexcept { return static_cast<bool>(pred_); }
  /// Membership is decidable: a predicate, or a complete closure.
  bool decidable() const noexcept { return has_predicate() || closed_; }
  bool truncated() const noexcept { return truncated_; }
  std::size_t cap() const noexcept { return cap_; }
  /// Element count of the closure (complete or partial); 0 for predicates.
  std::size_t closure_size() const noexcept { return order_.size(); }
  /// Sorted elements of a complete closure; throws Error(closure_overflow)
  /// for truncated or predicate handles.
  std::vector<UMatrix> elements() const;

  /// Throws Error(closure_overflow) when membership is not decidable.
  bool contains(const UMatrix& m) const;
  /// Adds a generator and extends the closure. Returns false once truncated.
  bool extend(const UMatrix& g);

 private:
  SubgroupHandle(const FormsContext& ctx, std::string name) : ctx_(&ctx), name_(std::move(name)) {}
  void grow(std::vector<UMatrix> frontier);

  const FormsContext* ctx_;
  std::string name_;
  std::vector<UMatrix> gens_;
  Predicate pred_;
  std::size_t cap_ = 0;
  MatrixSet members_;
  std::vector<UMatrix> order_;
  bool closed_ = false;
  bool truncated_ = false;
};

}  // namespace oddform
