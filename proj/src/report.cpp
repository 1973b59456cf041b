#include "oddform/report.hpp"

namespace oddform {

json CheckReport::to_json() const {
  json j;
  j["id"] = id;
  j["checked"] = checked;
  j["failed"] = failed;
  j["exhaustive"] = exhaustive;
  j["truncated"] = truncated;
  j["verdict"] = failed ? "fail" : (truncated ? "truncated" : "pass");
  if (!witnesses.empty()) j["witnesses"] = witnesses;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::refuted: return "refuted";
    case Verdict::truncated: return "truncated";
  }
  return "?";
}

}  // namespace oddform
