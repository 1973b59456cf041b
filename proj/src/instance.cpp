#include "oddform/instance.hpp"

#include "oddform/error.hpp"

namespace oddform {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::config_invalid, what); }

int read_n(const json& c) {
  if (!c.contains("n") || !c["n"].is_number_integer()) bad("config needs integer 'n'");
  const long long n = c["n"].get<long long>();
  if (n < 1 || n > 16) bad("'n' must lie in 1..16");
  return static_cast<int>(n);
}

Involution read_involution(const std::shared_ptr<const FiniteRing>& ring, const json& j) {
  if (j.is_null()) return standard_involution(ring, ring->is_commutative() ? StandardInvolution::identity
                                                                           : StandardInvolution::transpose);
  if (j.is_string()) return standard_involution(ring, parse_standard_involution(j.get<std::string>()));
  if (!j.is_array() || j.size() != ring->size()) bad("involution table must list one image per element");
  std::vector<Elem> table;
  for (const json& e : j) table.push_back(ring->parse(e));
  return Involution(ring, std::move(table));
}

}  // namespace

Instance load_instance(const json& config) {
  if (!config.is_object()) bad("config must be a JSON object");
  for (const auto& [key, v] : config.items()) {
    (void)v;
    if (key != "ring" && key != "involution" && key != "lambda" && key != "mu" && key != "delta" && key != "n" &&
        key != "name")
      bad("unknown config field '" + key + "'");
  }
  if (!config.contains("ring")) bad("config needs 'ring'");
  const int n = read_n(config);
  const RingSpec spec = RingSpec::from_json(config["ring"]);
  const json delta = config.value("delta", json("max"));
  Instance inst;
  inst.config = config;

  if (delta.is_object()) {
    if (!delta.contains("classical") || !delta["classical"].is_string()) bad("delta object needs 'classical'");
    const std::string kind = delta["classical"];
    json params = delta.value("params", json::object());
    inst.ctx = std::make_unique<FormsContext>(classical_instance(parse_classical_kind(kind), spec, n, params));
    inst.digest = spec.digest() + "/" + kind + "/n=" + std::to_string(n);
    return inst;
  }

  auto ring = build_ring(spec);
  const FiniteRing& r = *ring;
  Involution bar = read_involution(ring, config.value("involution", json(nullptr)));
  const Elem lambda = parse_element_ref(r, config.value("lambda", json("one")));
  const Elem mu = parse_element_ref(r, config.value("mu", json("zero")));
  auto q = make_odd_quadruple(ring, std::move(bar), lambda, mu);
  const Heisenberg h(q);
  PointSet d;
  if (delta.is_string()) {
    if (delta == "min")
      d = delta_min(h);
    else if (delta == "max")
      d = delta_max(h);
    else
      bad("delta must be 'min', 'max', a point list or a classical object");
  } else if (delta.is_array()) {
    d = point_set_from_json(r, delta);
  } else {
    bad("delta must be 'min', 'max', a point list or a classical object");
  }
  inst.ctx = std::make_unique<FormsContext>(n, q, std::move(d));
  const std::string inv = config.contains("involution") && config["involution"].is_string()
                              ? config["involution"].get<std::string>()
                              : (config.contains("involution") ? "table" : "default");
  inst.digest = spec.digest() + "/" + inv + "/n=" + std::to_string(n);
  return inst;
}

json m2f2_config(int n) {
  return {{"name", "m2f2-transpose"},
          {"ring", RingSpec::matrix(2, RingSpec::prime_field(2)).to_json()},
          {"involution", "transpose"},
          {"lambda", "one"},
          {"mu", "zero"},
          {"delta", "max"},
          {"n", n}};
}

}  // namespace oddform
