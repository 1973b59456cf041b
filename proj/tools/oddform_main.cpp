#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "oddform/action.hpp"
#include "oddform/error.hpp"
#include "oddform/instance.hpp"
#include "oddform/sandwich.hpp"
#include "oddform/suites.hpp"

using namespace oddform;

namespace {

enum Exit : int { ok = 0, failed = 1, config_error = 2, truncated = 3, overflow = 4, cap_error = 5, runtime = 6 };

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t cap = 0;
  bool strict = false;
  bool pretty = false;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config_invalid, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::config_invalid, "'" + path + "' is not valid JSON: " + e.what());
  }
}

json parse_json_arg(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::config_invalid, std::string(what) + " is not valid JSON: " + e.what());
  }
}

Instance load(const Options& o) {
  if (o.config.empty()) throw Error(ErrorCode::config_invalid, "--config is required");
  if (o.config == "example174") return load_instance(m2f2_config());
  return load_instance(read_json_file(o.config));
}

// Matrices {n, ring, entries} become rows of rendered elements.
void prettify(const FormsContext& ctx, json& j) {
  if (j.is_object()) {
    if (j.size() == 3 && j.contains("n") && j.contains("ring") && j.contains("entries") && j["n"] == ctx.n()) {
      j = matrix_to_json(ctx, matrix_from_json(ctx, j), true);
      return;
    }
    for (auto& [k, v] : j.items()) {
      (void)k;
      prettify(ctx, v);
    }
  } else if (j.is_array()) {
    for (json& v : j) prettify(ctx, v);
  }
}

std::string verdict_of(const std::vector<CheckReport>& reps) {
  bool trunc = false;
  for (const CheckReport& r : reps) {
    if (!r.passed()) return "fail";
    trunc = trunc || r.truncated;
  }
  return trunc ? "truncated" : "pass";
}

int exit_for(const std::string& verdict, bool strict) {
  if (verdict == "fail") return failed;
  if (verdict == "truncated" && strict) return truncated;
  return ok;
}

json checks_json(const std::vector<CheckReport>& reps) {
  json a = json::array();
  for (const CheckReport& r : reps) a.push_back(r.to_json());
  return a;
}

void emit(const Options& o, json report, const FormsContext* ctx) {
  if (o.pretty && ctx) prettify(*ctx, report);
  const std::string text = report.dump(o.pretty ? 2 : -1) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorCode::config_invalid, "cannot write '" + o.out + "'");
  f << text;
}

json header(const std::string& command, const Instance* inst, const Options& o) {
  json h = {{"command", command}, {"seed", o.seed}};
  if (inst) {
    h["instance"] = inst->digest;
    h["config"] = inst->config;
  }
  return h;
}

ElemSet ideal_from(const FormsContext& ctx, const std::string& text) {
  const json j = parse_json_arg(text, "--ideal");
  const FiniteRing& r = ctx.ring();
  std::vector<Elem> gens;
  if (!j.is_array()) throw Error(ErrorCode::config_invalid, "--ideal must be a JSON list of elements");
  for (const json& e : j) gens.push_back(parse_element_ref(r, e));
  // A generating list is accepted; reports record the closure.
  return involution_invariant_ideal(ctx.quadruple(), gens);
}

int cmd_verify(const Options& o, const std::string& suite) {
  Instance inst = load(o);
  SuiteOptions so;
  so.seed = o.seed;
  if (o.cap) so.cap = o.cap;
  const std::vector<CheckReport> reps = run_suite(*inst.ctx, suite, so);
  const std::string v = verdict_of(reps);
  json rep = header("verify", &inst, o);
  rep["suite"] = suite;
  rep["checks"] = checks_json(reps);
  rep["verdict"] = v;
  emit(o, rep, inst.ctx.get());
  return exit_for(v, o.strict);
}

int cmd_enumerate(const Options& o, const std::string& what, const std::string& ideal) {
  Instance inst = load(o);
  const FormsContext& ctx = *inst.ctx;
  const std::size_t cap = o.cap ? o.cap : kDefaultEnumerationCap;
  json rep = header("enumerate", &inst, o);
  rep["what"] = what;
  json entries = json::array();
  if (what == "form-parameters") {
    const auto all = enumerate_form_parameters(ctx.heis(), cap);
    const PointSet lo = delta_min(ctx.heis()), hi = delta_max(ctx.heis());
    for (std::size_t k = 0; k < all.size(); ++k) {
      const PointSet& p = all[k].elements();
      entries.push_back({{"index", k}, {"size", p.size()}, {"points", p.to_json()}, {"is_min", p == lo},
                         {"is_max", p == hi}});
    }
  } else if (what == "relative") {
    const ElemSet I = ideal_from(ctx, ideal);
    rep["ideal"] = I.to_json();
    const auto all = enumerate_relative_form_parameters(ctx.heis(), ctx.delta(), I, cap);
    for (std::size_t k = 0; k < all.size(); ++k) {
      const PointSet& p = all[k];
      entries.push_back({{"index", k}, {"size", p.size()}, {"J", p.first_coordinates().to_json()},
                         {"points", p.to_json()}});
    }
  } else {
    throw Error(ErrorCode::config_invalid, "enumerate expects 'form-parameters' or 'relative'");
  }
  rep["count"] = entries.size();
  rep["entries"] = entries;
  rep["verdict"] = "pass";
  emit(o, rep, &ctx);
  return ok;
}

int cmd_orbits(const Options& o, const std::string& ideal, const std::string& witnesses, bool full_group) {
  Instance inst = load(o);
  const FormsContext& ctx = *inst.ctx;
  const ElemSet I = ideal_from(ctx, ideal);
  std::vector<UMatrix> ws;
  if (!witnesses.empty()) {
    json j = read_json_file(witnesses);
    if (j.is_object()) j = j.at("witnesses");
    if (!j.is_array()) throw Error(ErrorCode::config_invalid, "witness file must hold a list of matrices");
    for (const json& m : j) {
      UMatrix w = matrix_from_json(ctx, m);
      if (!ctx.is_unitary(w).unitary) throw Error(ErrorCode::config_invalid, "witness is not unitary");
      ws.push_back(std::move(w));
    }
  }
  if (full_group) {
    SuiteOptions so;
    so.seed = o.seed;
    if (o.cap) so.cap = o.cap;
    const GroupSample g = group_sample(ctx, so);
    if (!g.complete) throw Error(ErrorCode::closure_overflow, "the group cannot be enumerated for --full-group");
    ws = g.elements;
  }
  const ROFPLattice lat = rofp_lattice(ctx, I, o.cap ? o.cap : kDefaultEnumerationCap);
  const OrbitPartition part = orbits(ctx, lat, ws, true, full_group);
  json rep = header("orbits", &inst, o);
  rep["lattice"] = lat.to_json();
  rep["partition"] = part.to_json(lat);
  rep["witness_count"] = ws.size();
  rep["verdict"] = "pass";
  emit(o, rep, &ctx);
  return ok;
}

int cmd_sandwich(const Options& o, const std::string& subgroup) {
  Instance inst = load(o);
  const FormsContext& ctx = *inst.ctx;
  std::optional<SubgroupHandle> H;
  if (subgroup == "example174_H") {
    H.emplace(m2f2_row_subgroup(ctx));
  } else {
    json j = read_json_file(subgroup);
    const json gens = j.is_object() ? j.at("generators") : j;
    std::vector<UMatrix> gs;
    for (const json& m : gens) {
      UMatrix g = matrix_from_json(ctx, m);
      if (!ctx.is_unitary(g).unitary) throw Error(ErrorCode::config_invalid, "generator is not unitary");
      gs.push_back(std::move(g));
    }
    const std::size_t cap = o.cap ? o.cap : (j.is_object() ? j.value("cap", std::size_t{200000}) : 200000);
    H.emplace(SubgroupHandle::from_generators(ctx, gs, cap, j.is_object() ? j.value("name", "subgroup") : "subgroup"));
  }
  json rep = header("sandwich", &inst, o);
  rep["subgroup"] = {{"name", H->name()},
                     {"generators", H->generators().size()},
                     {"closure_size", H->closure_size()},
                     {"truncated", H->truncated()}};
  if (!H->decidable()) {
    rep["verdict"] = "truncated";
    rep["reason"] = "subgroup closure exceeded the cap; membership is undecided";
    emit(o, rep, &ctx);
    return o.strict ? truncated : ok;
  }
  const SandwichReport sw = sandwich_check(*H);
  rep["sandwich"] = sw.to_json();
  std::string v = "pass";
  if (!sw.level.certified() || sw.lower.verdict == Verdict::refuted || sw.upper.verdict == Verdict::refuted)
    v = "fail";
  else if (sw.lower.verdict == Verdict::truncated || sw.upper.verdict == Verdict::truncated)
    v = "truncated";
  rep["verdict"] = v;
  emit(o, rep, &ctx);
  return exit_for(v, o.strict);
}

int cmd_repro(const Options& o, int n) {
  const ScenarioResult res = run_m2f2_scenario(n);
  json rep = header("repro-example174", nullptr, o);
  rep["instance"] = "M2(F2)/transpose/n=" + std::to_string(n);
  rep["report"] = res.report;
  rep["verdict"] = res.passed ? "pass" : "fail";
  Instance inst = load_instance(m2f2_config(n));
  emit(o, rep, inst.ctx.get());
  return res.passed ? ok : failed;
}

int exit_for_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::enumeration_overflow: return overflow;
    case ErrorCode::closure_overflow:
    case ErrorCode::cap_exceeded:
    case ErrorCode::size_overflow: return cap_error;
    case ErrorCode::spec_invalid:
    case ErrorCode::incompatible_ring:
    case ErrorCode::invalid_involution:
    case ErrorCode::not_a_symmetry:
    case ErrorCode::mu_constraint_failed:
    case ErrorCode::point_not_in_parameter:
    case ErrorCode::size_mismatch:
    case ErrorCode::incompatible_base:
    case ErrorCode::certification_failed:
    case ErrorCode::bad_indices:
    case ErrorCode::config_invalid: return config_error;
    default: return runtime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Odd unitary groups over finite rings: verification and reports"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Instance config (JSON file, or 'example174')");
    sub->add_option("--out", o.out, "Write the report here instead of stdout");
    sub->add_option("--seed", o.seed, "Seed for sampled checks");
    sub->add_option("--cap", o.cap, "Bound for closures and enumerations");
    sub->add_flag("--strict", o.strict, "Exit 3 when any check is truncated");
    sub->add_flag("--pretty", o.pretty, "Indented output with rendered matrices");
  };

  std::string suite = "all", what, ideal = "[0]", witnesses, subgroup;
  bool full_group = false;
  int n = 3;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  common(verify);
  verify->add_option("suite", suite, "quasimodule | relations | membership | congruence | action | all");
  auto* enumerate = app.add_subcommand("enumerate", "List form parameters or relative form parameters");
  common(enumerate);
  enumerate->add_option("what", what, "form-parameters | relative")->required();
  enumerate->add_option("--ideal", ideal, "Generators of I as a JSON list (relative only)");
  auto* orb = app.add_subcommand("orbits", "Reachability blocks of the action on relative form parameters");
  common(orb);
  orb->add_option("--ideal", ideal, "Generators of I as a JSON list");
  orb->add_option("--witnesses", witnesses, "JSON file with a list of unitary matrices");
  orb->add_flag("--full-group", full_group, "Act by every element of an enumerable group");
  auto* sand = app.add_subcommand("sandwich", "Level and sandwich containments of a subgroup");
  common(sand);
  sand->add_option("subgroup", subgroup, "JSON file with generators, or 'example174_H'")->required();
  auto* repro = app.add_subcommand("repro-example174", "Reproduce the M2(F2) transpose example");
  common(repro);
  repro->add_option("--n", n, "Rank of the instance")->check(CLI::Range(2, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : config_error;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, suite);
    if (enumerate->parsed()) return cmd_enumerate(o, what, ideal);
    if (orb->parsed()) return cmd_orbits(o, ideal, witnesses, full_group);
    if (sand->parsed()) return cmd_sandwich(o, subgroup);
    if (repro->parsed()) return cmd_repro(o, n);
  } catch (const Error& e) {
    json err = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return exit_for_error(e.code());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return runtime;
  }
  return config_error;
}
