#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oddform {

enum class ErrorCode {
  spec_invalid,
  size_overflow,
  incompatible_ring,
  invalid_involution,
  not_a_symmetry,
  mu_constraint_failed,
  closure_overflow,
  enumeration_overflow,
  not_invertible,
  cap_exceeded,
  bad_indices,
  point_not_in_parameter,
  size_mismatch,
  incompatible_base,
  certification_failed,
  no_shift_found,
  reduction_failed,
  config_invalid,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; code() is stable and
// is what the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace oddform
