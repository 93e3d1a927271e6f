#include "flowpoly/report_json.hpp"

#include "flowpoly/errors.hpp"

namespace flowpoly {

using nlohmann::json;

json to_json(const RationalPoly& p, const std::string& var) {
  json coeffs = json::array();
  for (const Rational& c : p.coefficients()) coeffs.push_back(c.to_string());
  return {{"var", var}, {"coeffs", std::move(coeffs)}};
}

RationalPoly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw DomainError("polynomial JSON needs a \"coeffs\" array");
  }
  std::vector<Rational> coeffs;
  for (const json& c : j["coeffs"]) {
    if (!c.is_string()) throw DomainError("polynomial coefficients must be strings");
    coeffs.push_back(Rational::parse(c.get<std::string>()));
  }
  return RationalPoly(std::move(coeffs));
}

json to_json(const RationalBiPoly& p) {
  json terms = json::array();
  for (const auto& [ij, c] : p.terms()) {
    terms.push_back({{"i", ij.first}, {"j", ij.second}, {"c", c.to_string()}});
  }
  return {{"vars", {"x", "y"}}, {"terms", std::move(terms)}};
}

json to_json(std::span<const Sample> samples) {
  json out = json::array();
  for (const Sample& s : samples) {
    out.push_back({{"q", s.x}, {"count", s.y.str()}});
  }
  return out;
}

json to_json(const MethodReport& r, bool include_timing) {
  json out = {{"method", r.method}, {"poly", to_json(r.poly)}};
  if (!r.samples.empty()) out["samples"] = to_json(r.samples);
  if (include_timing) out["wall_ms"] = r.wall_ms;
  return out;
}

json to_json(const LocalPolys& p) {
  return {{"totally_cyclic", p.totally_cyclic},
          {"open", to_json(p.open)},
          {"closed", to_json(p.closed)},
          {"open_samples", to_json(p.open_samples)},
          {"closed_samples", to_json(p.closed_samples)}};
}

json to_json(const OrientationClass& c) {
  json members = json::array();
  for (const Orientation& o : c.members) members.push_back(o.to_string());
  return {{"representative", c.representative.to_string()},
          {"size", c.members.size()},
          {"totally_cyclic", c.totally_cyclic},
          {"members", std::move(members)}};
}

json to_json(const DirectedCut& cut, const MultiGraph& g) {
  json side = json::array();
  for (int v : cut.side) side.push_back(g.label(v));
  return {{"side", std::move(side)}, {"edges", cut.edges.indices()}};
}

json to_json(const Bs1Result& r) {
  json terms = json::array();
  for (const Bs1Term& t : r.terms) {
    terms.push_back({{"subset", t.subset.indices()},
                     {"modular_count", t.modular_count},
                     {"totally_cyclic_contracted", t.totally_cyclic_contracted}});
  }
  return {{"q", r.q},
          {"lhs", r.lhs.to_string()},
          {"rhs", r.rhs.to_string()},
          {"holds", r.holds},
          {"terms", std::move(terms)}};
}

json to_json(const FlowVector& f) {
  if (!f.modulus) return f.values;
  return {{"values", f.values}, {"mod", *f.modulus}};
}

FlowVector flow_from_json(const json& j, int edge_count) {
  FlowVector f;
  const json* values = &j;
  if (j.is_object()) {
    if (!j.contains("values")) throw DomainError("flow object needs a \"values\" array");
    values = &j["values"];
    if (j.contains("mod")) {
      if (!j["mod"].is_number_integer()) throw DomainError("\"mod\" must be an integer");
      f.modulus = j["mod"].get<std::int64_t>();
    }
  }
  if (!values->is_array()) throw DomainError("flow must be a JSON array of integers");
  for (const json& v : *values) {
    if (!v.is_number_integer()) throw DomainError("flow entries must be integers");
    f.values.push_back(v.get<std::int64_t>());
  }
  if (static_cast<int>(f.values.size()) != edge_count) {
    throw DomainError("flow has " + std::to_string(f.values.size()) +
                      " entries but the graph has " + std::to_string(edge_count) +
                      " edges");
  }
  return f;
}

json to_json(const LiftResult& r) {
  return {{"flow", r.flow.values},
          {"orientation", r.orientation.to_string()},
          {"iterations", r.iterations},
          {"final_eta", r.final_eta}};
}

json to_json(const GraphSummary& s) {
  return {{"vertices", s.vertices},   {"edges", s.edges},
          {"components", s.components}, {"rank", s.rank},
          {"cycle_rank", s.cycle_rank}, {"bridges", s.bridges},
          {"bridgeless", s.bridgeless}};
}

json to_json(const CheckResult& c) {
  json out = {{"name", c.name},
              {"applicable", c.applicable},
              {"passed", c.passed},
              {"detail", c.detail}};
  if (!c.witness.is_null()) out["witness"] = c.witness;
  return out;
}

json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const CheckResult& c : r.checks) checks.push_back(to_json(c));
  return {{"graph", to_json(r.graph)},
          {"q_max", r.q_max},
          {"passed", r.passed()},
          {"checks", std::move(checks)}};
}

}  // namespace flowpoly
