#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flowpoly/limits.hpp"
#include "flowpoly/multigraph.hpp"
#include "flowpoly/orientation.hpp"
#include "flowpoly/polynomial.hpp"

namespace flowpoly {

struct MethodReport {
  std::string method;
  RationalPoly poly;
  std::vector<Sample> samples;  // empty unless the method interpolates
  double wall_ms = 0.0;
};

// Deletion-contraction with memoization on a relabelled edge-list key.
// Throws ResourceError when |E| exceeds limits.max_edges.
RationalBiPoly tutte(const MultiGraph& g, const Limits& limits = {});

enum class ModularMethod { kTutte, kSubset, kInterp, kCharpoly };
enum class IntegralMethod { kSumOrientations, kInterp };

// Names as used on the command line: tutte|subset|interp|charpoly and
// sum-orientations|interp. Throws DomainError on anything else.
ModularMethod parse_modular_method(std::string_view name);
IntegralMethod parse_integral_method(std::string_view name);
std::string to_string(ModularMethod m);
std::string to_string(IntegralMethod m);

// phi(G, t): nowhere-zero flows over any abelian group of order t.
MethodReport modular_flow_poly(const MultiGraph& g, ModularMethod method,
                               const Limits& limits = {});
// phi_Z(G, t): nowhere-zero integer t-flows.
MethodReport integral_flow_poly(const MultiGraph& g, IntegralMethod method,
                                const Limits& limits = {});

struct LocalPolys {
  RationalPoly open;    // phi_rho: lattice points of t * Delta+(G, rho)
  RationalPoly closed;  // bar phi_rho: lattice points of the closure
  bool totally_cyclic = false;
  std::vector<Sample> open_samples;    // q = 1 .. n+1
  std::vector<Sample> closed_samples;  // q = 0 .. n
};

// Interpolated local polynomials. For a non-totally-cyclic rho the open
// polynomial is zero and totally_cyclic is false.
LocalPolys local_flow_polys(const MultiGraph& g, const Orientation& rho,
                            const Limits& limits = {});
// The same for many orientations, fanned out over limits.jobs workers.
std::vector<LocalPolys> local_flow_polys_for(const MultiGraph& g,
                                             std::span<const Orientation> rhos,
                                             const Limits& limits = {});

struct ClassTerm {
  OrientationClass eulerian_class;
  RationalPoly closed_local;  // bar phi of the representative
};

struct DualPolys {
  RationalPoly integral_dual;  // sum over totally cyclic rho of bar phi_rho
  RationalPoly modular_dual;   // sum over class representatives
  // The same sum taken over the lexicographically greatest member of each
  // class; equal to modular_dual when the sum ignores the choice.
  RationalPoly modular_dual_alternate;
  std::vector<ClassTerm> classes;
};

DualPolys dual_polys(const MultiGraph& g, const Limits& limits = {});

// (-1)^n(G) phi(G, -t).
RationalPoly modular_dual_flow_poly_from_reciprocity(const MultiGraph& g,
                                                     const Limits& limits = {});

struct TutteSpecializations {
  Rational t01;               // T(0, 1)
  Rational t02;               // T(0, 2)
  RationalPoly modular;       // (-1)^n T(0, 1 - t)
  RationalPoly modular_dual;  // T(0, t + 1)
};

TutteSpecializations tutte_specializations(const MultiGraph& g,
                                           const Limits& limits = {});

struct Bs1Term {
  EdgeSubset subset;                          // X
  std::uint64_t modular_count = 0;            // phi(<X>, q)
  std::uint64_t totally_cyclic_contracted = 0;  // |O_tc(G/X)|
};

struct Bs1Result {
  std::int64_t q = 0;
  Rational lhs;  // phi(G, -q)
  Rational rhs;  // (-1)^n sum_X phi(<X>, q) |O_tc(G/X)|
  std::vector<Bs1Term> terms;  // nonzero terms only, by subset mask
  bool holds = false;
};

Bs1Result bs1_check(const MultiGraph& g, std::int64_t q,
                    const Limits& limits = {});

// Integer solutions of y_1 + ... + y_n = n(q-1), 0 <= y_i <= 2q-2, by
// inclusion-exclusion.
BigInt s_n_closed_form(int n, std::int64_t q);

}  // namespace flowpoly
