#include "flowpoly/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flowpoly/counting.hpp"
#include "flowpoly/errors.hpp"
#include "flowpoly/flat_poset.hpp"
#include "flowpoly/flowspace.hpp"
#include "flowpoly/orientation.hpp"
#include "flowpoly/report_json.hpp"

namespace flowpoly {

using nlohmann::json;

GraphSummary summarize(const MultiGraph& g) {
  GraphSummary s;
  s.vertices = g.vertex_count();
  s.edges = g.edge_count();
  s.components = component_count(g);
  s.rank = rank(g);
  s.cycle_rank = cycle_rank(g);
  s.bridges = bridges(g).indices();
  s.bridgeless = s.bridges.empty();
  return s;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return !c.applicable || c.passed; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

using Values = std::vector<std::int64_t>;

std::int64_t floor_mod(std::int64_t a, std::int64_t q) {
  const std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

Rational abs_value(const Rational& r) { return r.sign() < 0 ? -r : r; }

class Report {
 public:
  explicit Report(VerificationReport& out) : out_(out) {}

  void add(std::string name, bool passed, std::string detail, json witness = nullptr) {
    CheckResult c;
    c.name = std::move(name);
    c.passed = passed;
    c.detail = std::move(detail);
    if (!passed) c.witness = std::move(witness);
    out_.checks.push_back(std::move(c));
  }

  void skip(std::string name, std::string reason) {
    CheckResult c;
    c.name = std::move(name);
    c.applicable = false;
    c.detail = std::move(reason);
    out_.checks.push_back(std::move(c));
  }

 private:
  VerificationReport& out_;
};

// First failure wins the witness slot; later ones only bump the count.
struct Failures {
  int count = 0;
  json first;

  void note(json witness) {
    if (count++ == 0) first = std::move(witness);
  }
  bool none() const { return count == 0; }
};

json poly_pair(const RationalPoly& a, const RationalPoly& b) {
  return {{"left", to_json(a)}, {"right", to_json(b)}};
}

void check_lifting(const MultiGraph& g, std::int64_t q, const Limits& limits,
                   Report& report) {
  const Orientation eps(g.edge_count());
  const std::string suffix = "_q" + std::to_string(q);

  // Every nowhere-zero residue flow lifts.
  const auto modular = enumerate_modular_flows(g, eps, q, true, limits);
  std::set<Values> modular_set;
  Failures lift_failures;
  for (const FlowVector& r : modular) {
    modular_set.insert(r.values);
    try {
      const LiftResult lift = lift_modular_flow(g, eps, r.values, q);
      bool ok = lift.final_eta == 0 && is_flow(g, eps, lift.flow.values);
      for (int e = 0; ok && e < g.edge_count(); ++e) {
        const std::int64_t v = lift.flow[e];
        ok = v != 0 && v > -q && v < q && floor_mod(v, q) == r[e];
      }
      if (!ok) lift_failures.note({{"residues", r.values}, {"lift", to_json(lift)}});
    } catch (const InvariantViolation& ex) {
      lift_failures.note({{"residues", r.values}, {"error", ex.what()}});
    }
  }
  report.add("lifting" + suffix, lift_failures.none(),
             std::to_string(modular.size()) + " nowhere-zero flows mod " +
                 std::to_string(q) + " lifted",
             lift_failures.first);

  // Reduce every nowhere-zero integer q-flow and group by residue.
  std::map<Values, std::vector<Values>> fibers;
  std::map<std::uint64_t, std::uint64_t> cone_counts;
  std::uint64_t integer_total = 0;
  for_each_nowhere_zero_integer_flow(g, eps, q, limits, [&](std::span<const std::int64_t> f) {
    Values residue(f.size());
    for (std::size_t e = 0; e < f.size(); ++e) residue[e] = floor_mod(f[e], q);
    fibers[residue].emplace_back(f.begin(), f.end());
    ++cone_counts[induced_orientation(eps, f).mask()];
    ++integer_total;
  });

  std::set<Values> image;
  for (const auto& [residue, members] : fibers) image.insert(residue);
  json onto_witness;
  if (image != modular_set) {
    json missing = json::array();
    for (const Values& r : modular_set) {
      if (!image.contains(r)) missing.push_back(r);
    }
    onto_witness = {{"not_in_image", missing}, {"image_size", image.size()},
                    {"modular_size", modular_set.size()}};
  }
  report.add("reduction_onto" + suffix, image == modular_set,
             std::to_string(integer_total) + " integer flows reduce onto " +
                 std::to_string(modular_set.size()) + " residue flows",
             onto_witness);

  // Each fiber is one Eulerian class, reached by P Q P from any member.
  std::map<std::uint64_t, OrientationClass> class_cache;
  auto class_of = [&](const Orientation& rho) -> const OrientationClass& {
    auto it = class_cache.find(rho.mask());
    if (it == class_cache.end()) {
      it = class_cache.emplace(rho.mask(), eulerian_class(g, rho, limits)).first;
    }
    return it->second;
  };
  Failures fiber_failures;
  for (const auto& [residue, members] : fibers) {
    const Values& f = members.front();
    const Orientation rho = induced_orientation(eps, f);
    const OrientationClass& cls = class_of(rho);
    std::set<Values> fiber(members.begin(), members.end());
    if (fiber.size() != cls.members.size()) {
      fiber_failures.note({{"residues", residue},
                           {"fiber_size", fiber.size()},
                           {"class_size", cls.members.size()},
                           {"orientation", rho.to_string()}});
      continue;
    }
    for (const Values& other : members) {
      const Orientation sigma = induced_orientation(eps, other);
      if (!std::binary_search(cls.members.begin(), cls.members.end(), sigma)) {
        fiber_failures.note({{"residues", residue},
                             {"flow", f},
                             {"other", other},
                             {"reason", "induced orientations not Eulerian equivalent"}});
      }
    }
    const Values positive = apply_P(rho, eps, f);
    std::set<Values> images;
    for (const Orientation& sigma : cls.members) {
      images.insert(apply_P(eps, sigma, apply_Q(sigma, rho, positive, q)));
    }
    if (images != fiber) {
      fiber_failures.note({{"residues", residue},
                           {"flow", f},
                           {"reason", "class transport does not reproduce the fiber"}});
    }
  }
  report.add("fibers" + suffix, fiber_failures.none(),
             std::to_string(fibers.size()) + " fibers match their Eulerian classes",
             fiber_failures.first);

  // Integer q-flows split into the open cones of totally cyclic orientations.
  Failures cone_failures;
  std::uint64_t cone_total = 0;
  for_each_orientation(g, limits, [&](const Orientation& rho) {
    const bool tc = is_totally_cyclic(g, rho);
    const auto it = cone_counts.find(rho.mask());
    const std::uint64_t seen = it == cone_counts.end() ? 0 : it->second;
    const std::uint64_t expected = count_integer_flows_open(g, rho, q, limits);
    cone_total += expected;
    if (seen != expected || (!tc && seen != 0)) {
      cone_failures.note({{"orientation", rho.to_string()},
                          {"induced_count", seen},
                          {"open_count", expected},
                          {"totally_cyclic", tc}});
    }
  });
  if (cone_total != integer_total) {
    cone_failures.note({{"integer_total", integer_total}, {"cone_total", cone_total}});
  }
  report.add("cone_decomposition" + suffix, cone_failures.none(),
             "nowhere-zero integer flows split by induced orientation",
             cone_failures.first);
}

}  // namespace

VerificationReport verify(const MultiGraph& g, int q_max, const Limits& limits) {
  if (q_max < 1) throw DomainError("q_max must be at least 1");
  VerificationReport out;
  out.graph = summarize(g);
  out.q_max = q_max;
  Report report(out);
  const int n = out.graph.cycle_rank;
  const bool bridgeless = out.graph.bridgeless;
  const Orientation eps(g.edge_count());

  // Cross-method agreement.
  std::vector<MethodReport> modular;
  for (ModularMethod m : {ModularMethod::kTutte, ModularMethod::kSubset,
                          ModularMethod::kInterp, ModularMethod::kCharpoly}) {
    modular.push_back(modular_flow_poly(g, m, limits));
  }
  const RationalPoly phi = modular.front().poly;
  {
    const bool same = std::all_of(modular.begin(), modular.end(),
                                  [&](const MethodReport& r) { return r.poly == phi; });
    json w = json::array();
    for (const auto& r : modular) w.push_back(to_json(r));
    report.add("modular_methods_agree", same, "phi = " + phi.to_string(), w);
  }
  const MethodReport integral_sum = integral_flow_poly(g, IntegralMethod::kSumOrientations, limits);
  const MethodReport integral_interp = integral_flow_poly(g, IntegralMethod::kInterp, limits);
  const RationalPoly phi_z = integral_interp.poly;
  report.add("integral_methods_agree", integral_sum.poly == phi_z,
             "phi_Z = " + phi_z.to_string(), poly_pair(integral_sum.poly, phi_z));

  // Overdetermination: one sample beyond the interpolation window.
  {
    const std::int64_t q = n + 2;
    const Rational mod_count(BigInt(count_modular_flows(g, eps, q, true, limits)));
    const Rational int_count(BigInt(count_nowhere_zero_integer(g, eps, q, limits)));
    const bool ok = phi.evaluate(q) == mod_count && phi_z.evaluate(q) == int_count;
    report.add("overdetermination", ok, "extra sample at q = " + std::to_string(q),
               {{"q", q},
                {"modular_count", mod_count.to_string()},
                {"phi", phi.evaluate(q).to_string()},
                {"integral_count", int_count.to_string()},
                {"phi_Z", phi_z.evaluate(q).to_string()}});
  }

  // Local polynomials of every orientation.
  const auto all = enumerate_orientations(g, limits);
  const auto locals = local_flow_polys_for(g, all, limits);
  std::vector<std::size_t> tc_index;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (locals[i].totally_cyclic) tc_index.push_back(i);
  }
  {
    Failures local_extra, open_zero, recip, constants;
    for (std::size_t i = 0; i < all.size(); ++i) {
      const LocalPolys& p = locals[i];
      const CircuitBasis basis(g, all[i]);
      const std::int64_t q_open = n + 2, q_closed = n + 1;
      const Rational open_count(
          BigInt(count_flows_in_range(basis, {1, q_open - 1, false}, limits)));
      const Rational closed_count(
          BigInt(count_flows_in_range(basis, {0, q_closed, false}, limits)));
      if (p.open.evaluate(q_open) != open_count ||
          p.closed.evaluate(q_closed) != closed_count) {
        local_extra.note({{"orientation", all[i].to_string()}, {"local", to_json(p)}});
      }
      if (!p.totally_cyclic) {
        if (!p.open.is_zero()) {
          open_zero.note({{"orientation", all[i].to_string()}, {"open", to_json(p.open)}});
        }
        continue;
      }
      if (reciprocity_transform(p.open, n) != p.closed) {
        recip.note({{"orientation", all[i].to_string()}, {"local", to_json(p)}});
      }
      const Rational sign = n % 2 == 0 ? 1 : -1;
      if (p.open.evaluate(0) != sign || p.closed.evaluate(0) != Rational(1)) {
        constants.note({{"orientation", all[i].to_string()}, {"local", to_json(p)}});
      }
    }
    report.add("local_overdetermination", local_extra.none(),
               "open and closed counts checked one step past the window", local_extra.first);
    report.add("open_count_without_total_cyclicity", open_zero.none(),
               std::to_string(all.size() - tc_index.size()) +
                   " orientations with a directed cut have no interior flows",
               open_zero.first);
    report.add("local_reciprocity", recip.none(),
               std::to_string(tc_index.size()) + " totally cyclic orientations", recip.first);
    report.add("local_constant_terms", constants.none(),
               "phi_rho(0) = (-1)^n and closed(0) = 1", constants.first);
  }

  // Eulerian classes.
  const auto classes = eulerian_classes(g, true, limits);
  const DualPolys dual = dual_polys(g, limits);
  {
    Failures partition;
    std::set<std::uint64_t> covered;
    std::size_t total = 0;
    for (const auto& cls : classes) {
      total += cls.members.size();
      for (const Orientation& o : cls.members) {
        covered.insert(o.mask());
        if (!is_totally_cyclic(g, o)) {
          partition.note({{"class", to_json(cls)}, {"not_totally_cyclic", o.to_string()}});
        }
      }
      if (eulerian_class(g, cls.representative, limits).members != cls.members) {
        partition.note({{"class", to_json(cls)}, {"reason", "class of representative differs"}});
      }
    }
    std::set<std::uint64_t> tc_masks;
    for (std::size_t i : tc_index) tc_masks.insert(all[i].mask());
    if (covered != tc_masks || total != tc_masks.size()) {
      partition.note({{"reason", "classes do not partition the totally cyclic orientations"}});
    }
    for (const auto& cls : eulerian_classes(g, false, limits)) {
      for (const Orientation& o : cls.members) {
        if (is_totally_cyclic(g, o) != cls.totally_cyclic) {
          partition.note({{"class", to_json(cls)}, {"mixed_member", o.to_string()}});
        }
      }
    }
    report.add("eulerian_partition", partition.none(),
               std::to_string(classes.size()) + " classes over " +
                   std::to_string(tc_index.size()) + " totally cyclic orientations",
               partition.first);
  }
  {
    std::map<std::uint64_t, std::size_t> index_of;
    for (std::size_t i = 0; i < all.size(); ++i) index_of[all[i].mask()] = i;
    Failures invariance, sizes;
    for (const auto& cls : classes) {
      const LocalPolys& rep = locals[index_of.at(cls.representative.mask())];
      for (const Orientation& o : cls.members) {
        const LocalPolys& p = locals[index_of.at(o.mask())];
        if (p.open != rep.open || p.closed != rep.closed) {
          invariance.note({{"representative", cls.representative.to_string()},
                           {"member", o.to_string()},
                           {"representative_local", to_json(rep)},
                           {"member_local", to_json(p)}});
        }
      }
      if (rep.closed.evaluate(1) != Rational(static_cast<std::int64_t>(cls.members.size()))) {
        sizes.note({{"class", to_json(cls)}, {"closed_at_1", rep.closed.evaluate(1).to_string()}});
      }
    }
    report.add("class_local_invariance", invariance.none(),
               "equivalent orientations share local polynomials", invariance.first);
    report.add("class_size_closed_count", sizes.none(),
               "class size equals closed count at q = 1", sizes.first);
  }
  report.add("representative_independence",
             dual.modular_dual == dual.modular_dual_alternate,
             "least and greatest representatives give the same dual sum",
             poly_pair(dual.modular_dual, dual.modular_dual_alternate));

  // Decompositions.
  {
    RationalPoly open_sum, closed_sum, rep_sum;
    for (std::size_t i : tc_index) {
      open_sum += locals[i].open;
      closed_sum += locals[i].closed;
    }
    for (const auto& term : dual.classes) {
      for (std::size_t i : tc_index) {
        if (all[i] == term.eulerian_class.representative) rep_sum += locals[i].open;
      }
    }
    report.add("orientation_sum_integral", open_sum == phi_z,
               "phi_Z equals the sum of open local polynomials", poly_pair(open_sum, phi_z));
    report.add("class_sum_modular", rep_sum == phi,
               "phi equals the sum over class representatives", poly_pair(rep_sum, phi));
    report.add("orientation_sum_integral_dual", closed_sum == dual.integral_dual,
               "closed local polynomials sum to the integral dual",
               poly_pair(closed_sum, dual.integral_dual));
  }

  // Reciprocity.
  report.add("integral_reciprocity", reciprocity_transform(phi_z, n) == dual.integral_dual,
             "(-1)^n phi_Z(-t) = integral dual",
             poly_pair(reciprocity_transform(phi_z, n), dual.integral_dual));
  report.add("modular_reciprocity", reciprocity_transform(phi, n) == dual.modular_dual,
             "(-1)^n phi(-t) = class sum of closed local polynomials",
             poly_pair(reciprocity_transform(phi, n), dual.modular_dual));

  // Evaluations against Tutte specializations and enumeration.
  {
    const TutteSpecializations t = tutte_specializations(g, limits);
    const Rational tc_count(static_cast<std::int64_t>(tc_index.size()));
    const Rational class_count(static_cast<std::int64_t>(classes.size()));
    report.add("tutte_dual_specialization", t.modular_dual == dual.modular_dual,
               "T(0, t+1) = modular dual", poly_pair(t.modular_dual, dual.modular_dual));
    const bool regions = abs_value(phi.evaluate(-1)) == tc_count && t.t02 == tc_count;
    report.add("totally_cyclic_count", regions,
               "|phi(-1)| = T(0,2) = " + tc_count.to_short_string(),
               {{"phi_at_minus_1", phi.evaluate(-1).to_string()},
                {"T02", t.t02.to_string()},
                {"enumerated", tc_index.size()}});
    const bool cls = abs_value(phi.evaluate(0)) == class_count && t.t01 == class_count;
    report.add("class_count", cls, "|phi(0)| = T(0,1) = " + class_count.to_short_string(),
               {{"phi_at_0", phi.evaluate(0).to_string()},
                {"T01", t.t01.to_string()},
                {"enumerated", classes.size()}});
    report.add("integral_constant_term", abs_value(phi_z.evaluate(0)) == tc_count,
               "|phi_Z(0)| = number of totally cyclic orientations",
               {{"phi_Z_at_0", phi_z.evaluate(0).to_string()}, {"enumerated", tc_index.size()}});
  }

  if (bridgeless && g.edge_count() > 0) {
    const bool ok = phi.degree() == n && phi_z.degree() == n;
    report.add("degree", ok, "both polynomials have degree n = " + std::to_string(n),
               poly_pair(phi, phi_z));
  } else {
    report.skip("degree", bridgeless ? "graph has no edges" : "graph has a bridge");
  }
  if (!bridgeless) {
    const bool ok = phi.is_zero() && phi_z.is_zero() && tc_index.empty() &&
                    dual.modular_dual.is_zero() && dual.integral_dual.is_zero();
    report.add("bridge_vanishing", ok, "a bridge kills every flow polynomial",
               poly_pair(phi, phi_z));
  } else {
    report.skip("bridge_vanishing", "graph is bridgeless");
  }

  // 0-1 flows are exactly the directed Eulerian edge sets.
  {
    if (g.edge_count() >= 63 || (std::uint64_t{1} << g.edge_count()) > limits.max_subsets) {
      throw ResourceError("0-1 flow check needs 2^|E| <= max_subsets");
    }
    std::set<std::uint64_t> from_flows, eulerian;
    for (const FlowVector& f : zero_one_flows(g, eps, limits)) {
      std::uint64_t mask = 0;
      for (int e = 0; e < g.edge_count(); ++e) {
        if (f[e] != 0) mask |= std::uint64_t{1} << e;
      }
      from_flows.insert(mask);
    }
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << g.edge_count()); ++x) {
      if (is_directed_eulerian(g, eps, EdgeSubset(g.edge_count(), x))) eulerian.insert(x);
    }
    report.add("zero_one_flows", from_flows == eulerian,
               std::to_string(eulerian.size()) + " directed Eulerian edge sets",
               {{"zero_one_flows", from_flows.size()}, {"eulerian_sets", eulerian.size()}});
  }

  {
    const FlatPoset poset = FlatPoset::build(g, limits);
    Failures mobius;
    for (std::size_t x = 1; x < poset.flats().size(); ++x) {
      if (poset.mobius_interval_sum(x) != 0) {
        mobius.note({{"flat", poset.flats()[x].key.indices()},
                     {"sum", poset.mobius_interval_sum(x)}});
      }
    }
    report.add("flat_mobius", mobius.none(),
               std::to_string(poset.flats().size()) + " flats", mobius.first);
  }

  {
    // Nowhere-zero integer counts do not depend on the reference orientation.
    std::uint64_t alternating = 0;
    for (int e = 0; e < g.edge_count(); e += 2) alternating |= std::uint64_t{1} << e;
    const std::vector<Orientation> refs = {eps, eps.reversal(),
                                           Orientation(g.edge_count(), alternating)};
    Failures refs_fail;
    for (std::int64_t q = 2; q <= q_max; ++q) {
      const std::uint64_t base = count_nowhere_zero_integer(g, refs[0], q, limits);
      for (const Orientation& r : refs) {
        const std::uint64_t c = count_nowhere_zero_integer(g, r, q, limits);
        if (c != base) {
          refs_fail.note({{"q", q}, {"orientation", r.to_string()}, {"count", c}, {"base", base}});
        }
      }
    }
    report.add("reference_independence", refs_fail.none(),
               "integer counts agree across three reference orientations", refs_fail.first);
  }

  for (std::int64_t q = 2; q <= q_max; ++q) check_lifting(g, q, limits, report);

  for (std::int64_t q = 1; q <= q_max; ++q) {
    const Bs1Result r = bs1_check(g, q, limits);
    report.add("bs1_q" + std::to_string(q), r.holds,
               "phi(-q) = " + r.lhs.to_short_string() + ", subset sum " +
                   r.rhs.to_short_string(),
               to_json(r));
  }
  return out;
}

}  // namespace flowpoly
