#pragma once

// Instances built from JSON configs:
//   {"ring": RingSpec, "involution": name or table, "lambda": ref, "mu": ref,
//    "delta": "min" | "max" | [[x, y], ..] | {"classical": kind, ..}, "n": int}

#include <memory>
#include <string>

#include "json.hpp"
#include "oddform/unitary.hpp"

namespace oddform {

struct Instance {
  json config;
  std::unique_ptr<FormsContext> ctx;
  /// Short name such as "M2(F2)/transpose/n=3".
  std::string digest;
};

/// Validates the config through the ring and form parameter layers. Throws
/// Error; malformed fields raise config_invalid and the algebraic checks keep
/// their own codes.
Instance load_instance(const json& config);

/// The block swap scenario instance: M2(F2), transpose, lambda = 1, mu = 0,
/// Delta = Delta_max.
json m2f2_config(int n = 3);

}  // namespace oddform
