// Runs the seven acceptance criteria and prints one line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oddform/action.hpp"
#include "oddform/instance.hpp"
#include "oddform/sandwich.hpp"
#include "oddform/suites.hpp"

using namespace oddform;

namespace {

json prime(std::uint32_t p) { return {{"kind", "prime_field"}, {"p", p}}; }

json commutative(const json& ring, const char* lambda, const char* mu, int n) {
  return {{"ring", ring}, {"involution", "identity"}, {"lambda", lambda}, {"mu", mu}, {"delta", "max"}, {"n", n}};
}

json f2(int n) { return commutative(prime(2), "one", "zero", n); }
json f3(int n) { return commutative(prime(3), "one", "zero", n); }
json z4(int n) { return commutative({{"kind", "integers_mod"}, {"m", 4}}, "one", "two", n); }
json classical(const char* kind, std::uint32_t p, int n) {
  return {{"ring", prime(p)}, {"delta", {{"classical", kind}}}, {"n", n}};
}

// Tallies reports; a failure records the first offending id.
struct Tally {
  std::uint64_t checked = 0;
  std::size_t reports = 0;
  std::string problem;

  void add(const std::string& where, const CheckReport& r, bool need_exhaustive) {
    ++reports;
    checked += r.checked;
    if (!problem.empty()) return;
    if (!r.passed())
      problem = where + " " + r.id + " failed " + std::to_string(r.failed) + "/" + std::to_string(r.checked);
    else if (r.checked == 0)
      problem = where + " " + r.id + " checked nothing";
    else if (need_exhaustive && !r.exhaustive)
      problem = where + " " + r.id + " not exhaustive";
  }
  void add(const std::string& where, const std::vector<CheckReport>& rs, bool need_exhaustive) {
    for (const CheckReport& r : rs) add(where, r, need_exhaustive);
  }
  void require(bool ok, const std::string& what) {
    if (!ok && problem.empty()) problem = what;
  }
};

bool criterion(int k, const char* title, const std::function<std::string(Tally&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::string extra;
  try {
    extra = body(t);
  } catch (const std::exception& e) {
    t.problem = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = t.problem.empty();
  std::printf("criterion %d: %s %s (reports=%zu checked=%llu%s%s, %.1fs)%s%s\n", k, ok ? "PASS" : "FAIL", title,
              t.reports, static_cast<unsigned long long>(t.checked), extra.empty() ? "" : " ", extra.c_str(), secs,
              ok ? "" : ": ", t.problem.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  bool all = true;

  all &= criterion(1, "M2(F2) transpose scenario at n=3", [](Tally& t) {
    const ScenarioResult res = run_m2f2_scenario(3);
    std::size_t n = 0;
    for (const json& a : res.report["assertions"]) {
      ++n;
      ++t.checked;
      t.require(a["pass"].get<bool>(), "assertion " + a["name"].get<std::string>() + " failed");
    }
    t.reports = 1;
    t.require(res.passed && n == 21, "scenario reported " + std::to_string(n) + " assertions");
    return "assertions=" + std::to_string(n);
  });

  all &= criterion(2, "relations and permutation conjugations", [](Tally& t) {
    for (const json& cfg : {f2(3), z4(3)}) {
      const Instance inst = load_instance(cfg);
      SuiteOptions opt;
      const auto reps = suite_relations(*inst.ctx, opt);
      t.require(reps.size() == 14, inst.digest + ": expected 14 relation reports");
      t.add(inst.digest, reps, true);
    }
    const Instance m = load_instance(m2f2_config(3));
    SuiteOptions opt;
    opt.relation_samples = 10000;
    for (const CheckReport& r : suite_relations(*m.ctx, opt)) {
      t.add(m.digest, r, false);
      t.require(r.exhaustive || r.checked >= 10000, m.digest + " " + r.id + " sampled fewer than 10^4 cases");
    }
    return std::string();
  });

  all &= criterion(3, "column criterion against the definition at n=1", [](Tally& t) {
    for (const json& cfg : {f2(1), f3(1), classical("sp_odd", 3, 1)}) {
      const Instance inst = load_instance(cfg);
      bool oracle = false, gram = false;
      for (const CheckReport& r : suite_membership(*inst.ctx, SuiteOptions{})) {
        if (r.id == "unitary-oracle") {
          oracle = true;
          t.add(inst.digest, r, true);
        } else if (r.id == "gram-preservation") {
          gram = true;
          t.add(inst.digest, r, true);
        }
      }
      t.require(oracle, inst.digest + ": no oracle report");
      if (inst.digest.find("sp_odd") != std::string::npos) t.require(gram, inst.digest + ": no Gram report");
    }
    return std::string();
  });

  all &= criterion(4, "quasimodule, form parameter and congruence identities at n=1", [](Tally& t) {
    for (const json& cfg : {f2(1), f3(1), z4(1), classical("gl_odd", 2, 1), classical("sp_odd", 3, 1)}) {
      const Instance inst = load_instance(cfg);
      SuiteOptions opt;
      t.add(inst.digest, suite_quasimodule(*inst.ctx, opt), true);
      for (const CheckReport& r : suite_congruence(*inst.ctx, opt))
        if (r.id.rfind("q-sum-", 0) == 0 || r.id.rfind("q-shift", 0) == 0) t.add(inst.digest, r, true);
    }
    return std::string();
  });

  all &= criterion(5, "action laws and subgroup equality at n=1", [](Tally& t) {
    std::string order;
    for (const json& cfg : {f2(1), classical("gl_odd", 2, 1)}) {
      const Instance inst = load_instance(cfg);
      const auto reps = suite_action(*inst.ctx, SuiteOptions{});
      t.add(inst.digest, reps, true);
      for (const CheckReport& r : reps)
        if (r.id == "group-order") {
          const std::size_t size = r.notes.value("size", std::size_t{0});
          order += (order.empty() ? "" : ",") + inst.digest + ":" + std::to_string(size);
          if (inst.digest.find("gl_odd") != std::string::npos)
            t.require(size == 168, "gl_odd group order " + std::to_string(size) + " != 168");
        }
    }
    return "order=" + order;
  });

  all &= criterion(6, "first entry and two column reductions at n=3", [](Tally& t) {
    for (const json& cfg : {f2(3), z4(3)}) {
      const Instance inst = load_instance(cfg);
      const auto reps = verify_reductions(*inst.ctx, 1000, 12, 1);
      t.add(inst.digest, reps, false);
      for (const CheckReport& r : reps) t.require(r.checked >= 1000, inst.digest + " " + r.id + " < 10^3 products");
    }
    return std::string();
  });

  all &= criterion(7, "q-column residuals for random moves at n=3", [](Tally& t) {
    const Instance inst = load_instance(f2(3));
    const CheckReport r = verify_commutator_columns_sampled(*inst.ctx, 200, 1);
    t.add(inst.digest, r, false);
    t.require(r.notes.value("pairs", std::size_t{0}) >= 100, "fewer than 10^2 pairs");
    return "pairs=" + std::to_string(r.notes.value("pairs", std::size_t{0}));
  });

  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
