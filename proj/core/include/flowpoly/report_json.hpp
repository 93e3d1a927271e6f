#pragma once

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "flowpoly/counting.hpp"
#include "flowpoly/flowspace.hpp"
#include "flowpoly/orientation.hpp"
#include "flowpoly/polynomial.hpp"
#include "flowpoly/verify.hpp"

namespace flowpoly {

// {"var":"t","coeffs":["-3/1","6/1","-4/1","1/1"]}, ascending degree.
nlohmann::json to_json(const RationalPoly& p, const std::string& var = "t");
// Throws DomainError on a malformed object.
RationalPoly poly_from_json(const nlohmann::json& j);

// {"vars":["x","y"],"terms":[{"i":0,"j":1,"c":"2/1"}, ...]}
nlohmann::json to_json(const RationalBiPoly& p);

nlohmann::json to_json(std::span<const Sample> samples);
// Timing is left out unless asked for, so repeated runs stay byte-identical.
nlohmann::json to_json(const MethodReport& r, bool include_timing = false);
nlohmann::json to_json(const LocalPolys& p);
nlohmann::json to_json(const OrientationClass& c);
nlohmann::json to_json(const DirectedCut& cut, const MultiGraph& g);
nlohmann::json to_json(const Bs1Result& r);

// An array of integers, or {"values": [...], "mod": q} for residues.
nlohmann::json to_json(const FlowVector& f);
// Accepts both forms above. Throws DomainError on anything else or on a
// length different from edge_count.
FlowVector flow_from_json(const nlohmann::json& j, int edge_count);

nlohmann::json to_json(const LiftResult& r);
nlohmann::json to_json(const GraphSummary& s);
nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const VerificationReport& r);

}  // namespace flowpoly
