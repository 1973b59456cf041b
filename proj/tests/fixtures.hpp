#pragma once

#include <string>

#include "json.hpp"
#include "oddform/instance.hpp"

namespace fixtures {

using oddform::json;

inline json commutative(const json& ring, const char* lambda, const char* mu, const json& delta, int n) {
  return {{"ring", ring}, {"involution", "identity"}, {"lambda", lambda}, {"mu", mu}, {"delta", delta}, {"n", n}};
}

inline json f2(int n, const json& delta = "max") { return commutative({{"kind", "prime_field"}, {"p", 2}}, "one", "zero", delta, n); }
inline json f3(int n) { return commutative({{"kind", "prime_field"}, {"p", 3}}, "one", "zero", "max", n); }
inline json z4(int n) { return commutative({{"kind", "integers_mod"}, {"m", 4}}, "one", "two", "max", n); }
inline json m2f2(int n) { return oddform::m2f2_config(n); }
inline json classical(const char* kind, std::uint32_t p, int n) {
  return {{"ring", {{"kind", "prime_field"}, {"p", p}}}, {"delta", {{"classical", kind}}}, {"n", n}};
}

inline oddform::Instance load(const json& cfg) { return oddform::load_instance(cfg); }

}  // namespace fixtures
