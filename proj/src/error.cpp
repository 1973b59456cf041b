#include "oddform/error.hpp"

namespace oddform {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::spec_invalid: return "spec-invalid";
    case ErrorCode::size_overflow: return "size-overflow";
    case ErrorCode::incompatible_ring: return "incompatible-ring";
    case ErrorCode::invalid_involution: return "invalid-involution";
    case ErrorCode::not_a_symmetry: return "not-a-symmetry";
    case ErrorCode::mu_constraint_failed: return "mu-constraint-failed";
    case ErrorCode::closure_overflow: return "closure-overflow";
    case ErrorCode::enumeration_overflow: return "enumeration-overflow";
    case ErrorCode::not_invertible: return "not-invertible";
    case ErrorCode::cap_exceeded: return "cap-exceeded";
    case ErrorCode::bad_indices: return "bad-indices";
    case ErrorCode::point_not_in_parameter: return "point-not-in-parameter";
    case ErrorCode::size_mismatch: return "size-mismatch";
    case ErrorCode::incompatible_base: return "incompatible-base";
    case ErrorCode::certification_failed: return "certification-failed";
    case ErrorCode::no_shift_found: return "no-shift-found";
    case ErrorCode::reduction_failed: return "reduction-failed";
    case ErrorCode::config_invalid: return "config-invalid";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace oddform
