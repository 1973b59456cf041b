#pragma once

// Uniform result records for the verification suites.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace oddform {

using json = nlohmann::json;

struct CheckReport {
  static constexpr std::size_t kMaxWitnesses = 8;

  std::string id;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  bool exhaustive = true;
  bool truncated = false;
  json witnesses = json::array();
  json notes = json::object();

  CheckReport() = default;
  explicit CheckReport(std::string name) : id(std::move(name)) {}

  // Counts one case; the witness is only materialized on failure.
  template <typename WitnessFn>
  bool record(bool ok, WitnessFn&& witness) {
    ++checked;
    if (!ok) {
      ++failed;
      if (witnesses.size() < kMaxWitnesses) witnesses.push_back(witness());
    }
    return ok;
  }
  bool record(bool ok) {
    return record(ok, [] { return json(nullptr); });
  }

  bool passed() const { return failed == 0; }
  json to_json() const;
};

enum class Verdict { verified, refuted, truncated };

std::string to_string(Verdict v);

}  // namespace oddform
